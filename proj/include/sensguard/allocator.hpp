#pragma once

namespace sensguard {

// Keeps multi-megabyte sample buffers on the heap between simulation steps
// instead of mapping and unmapping them on every allocation. No-op outside glibc.
void configure_allocator();

}
