#include "sensguard/geometry.hpp"

#include <cmath>
#include <numbers>

#include "sensguard/error.hpp"
#include "sensguard/estimator.hpp"
#include "sensguard/rng.hpp"

namespace sensguard {

double wrap_angle(double a)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    a = std::fmod(a + std::numbers::pi, two_pi);
    if (a < 0.0)
        a += two_pi;
    return a - std::numbers::pi;
}

std::vector<TrajectoryPoint> gen_trajectory(double duration, double step, double speed_mean,
                                            double heading_sigma, const Bounds& bounds, std::uint64_t seed,
                                            const TrajectoryOptions& options)
{
    require(duration > 0.0 && step > 0.0, ErrorCode::invalid_parameter, "duration and step must be positive");
    require(bounds.width > 0.0 && bounds.height > 0.0, ErrorCode::invalid_bounds, "degenerate bounds");
    require(speed_mean >= 0.0 && heading_sigma >= 0.0 && options.speed_jitter >= 0.0,
            ErrorCode::invalid_parameter, "negative speed or spread");
    require(speed_mean * step < std::min(bounds.width, bounds.height), ErrorCode::invalid_bounds,
            "bounds smaller than one step");

    Rng rng = make_rng(seed);
    const Vec2 start = options.start.value_or(Vec2{bounds.x0 + bounds.width / 2.0, bounds.y0 + bounds.height / 2.0});
    require(bounds.contains(start), ErrorCode::invalid_bounds, "start outside bounds");
    double heading = options.initial_heading ? *options.initial_heading
                                             : uniform(rng, -std::numbers::pi, std::numbers::pi);

    const auto count = static_cast<std::size_t>(std::floor(duration / step + 1e-9)) + 1;
    std::vector<TrajectoryPoint> out;
    out.reserve(count);
    out.push_back({0.0, start, speed_mean, heading});

    auto draw_speed = [&]() {
        if (options.speed_jitter == 0.0)
            return speed_mean;
        return std::max(0.0, speed_mean + normal(rng, options.speed_jitter));
    };

    for (std::size_t k = 1; k < count; ++k) {
        const TrajectoryPoint& prev = out.back();
        if (heading_sigma > 0.0)
            heading += normal(rng, heading_sigma);
        const double v = draw_speed();
        const double len = v * step;
        Vec2 next{prev.position.x + len * std::cos(heading), prev.position.y + len * std::sin(heading)};
        if (next.x < bounds.x0 || next.x > bounds.x0 + bounds.width)
            heading = std::numbers::pi - heading;
        if (next.y < bounds.y0 || next.y > bounds.y0 + bounds.height)
            heading = -heading;
        heading = wrap_angle(heading);
        next = {prev.position.x + len * std::cos(heading), prev.position.y + len * std::sin(heading)};
        if (!bounds.contains(next))
            fail(ErrorCode::invalid_bounds, "trajectory could not be kept inside the bounds");
        out.push_back({static_cast<double>(k) * step, next, v, heading});
    }
    return out;
}

SensingGeometry geometry_at(Vec2 initiator, const TrajectoryPoint& point)
{
    const double dx = point.position.x - initiator.x;
    const double dy = point.position.y - initiator.y;
    const double d = std::hypot(dx, dy);
    require(d > 0.0, ErrorCode::coincident_position, "target coincides with the initiator");
    SensingGeometry g;
    g.d = d;
    g.phi = std::atan2(dy, dx);
    g.theta = wrap_angle(point.heading - g.phi) - g.phi;
    g.v_r = std::cos(g.phi + g.theta) * point.speed;
    return g;
}

double round_trip_delay(double d)
{
    return 2.0 * d / speed_of_light;
}

double doppler_shift(double v_r, double fc_hz)
{
    return 2.0 * fc_hz * v_r / speed_of_light;
}

}
