#include <cmath>
#include <iostream>

#include "CLI11.hpp"
#include "sensguard/error.hpp"
#include "sensguard/signal.hpp"

using namespace sensguard;

int main(int argc, char** argv)
{
    CLI::App app{"write a pulse-train I/Q fixture with known PRT"};
    std::string out;
    double snr_db = 0.0;
    double duration = 0.02;
    double delay = 1e-4;
    std::uint64_t seed = 1;
    PulseSpec spec;
    double fs = 0.0;
    bool noiseless = false;
    app.add_option("--out", out, "output .iq path")->required();
    app.add_option("--snr-db", snr_db, "in-pulse SNR [dB]");
    app.add_option("--duration", duration, "length [s]");
    app.add_option("--delay", delay, "delay of the first pulse [s]");
    app.add_option("--seed", seed, "noise seed");
    app.add_option("--bandwidth", spec.bandwidth, "sweep bandwidth [Hz]");
    app.add_option("--fc", spec.carrier, "carrier [Hz]");
    app.add_option("--tp", spec.pulse_duration, "pulse duration [s]");
    app.add_option("--prt", spec.prt, "pulse repetition time [s]");
    app.add_option("--fs", fs, "sample rate [Hz], default 2B");
    app.add_flag("--noiseless", noiseless, "omit the noise");
    CLI11_PARSE(app, argc, argv);

    try {
        if (fs <= 0.0)
            fs = spec.default_sample_rate();
        const ComplexSignal train = gen_pulse_train(spec, fs, duration + spec.prt);
        const auto skip = static_cast<std::size_t>(std::llround(spec.prt * fs - delay * fs)) % pulse_offset(spec, fs, 1);
        ComplexSignal rx = slice(train, skip, static_cast<std::size_t>(std::llround(duration * fs)));
        rx.sample_rate = fs;
        const auto amp = static_cast<float>(std::sqrt(db_to_linear(snr_db)));
        for (auto& s : rx.samples)
            s *= amp;
        if (!noiseless) {
            Rng rng = make_rng(seed);
            add_into(rx, gen_awgn(rx.size(), 1.0, rng));
        }
        write_iq(out, rx);
        std::cout << "wrote " << rx.size() << " samples at " << fs << " Hz to " << out << "\n";
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
