#pragma once

#include <complex>

#include "sensguard/signal.hpp"

namespace sensguard {

inline constexpr double speed_of_light = 299792458.0;
inline constexpr double default_sigma_phi = 0.02;

struct FimMatrix {
    double j_dd = 0.0; // 1/m^2
    double j_vv = 0.0; // 1/(m/s)^2
    double j_dv = 0.0; // 1/(m * m/s)
    double gamma = 0.0;

    double determinant() const { return j_dd * j_vv - j_dv * j_dv; }
};

struct CrlbEstimate {
    double sigma_d = 0.0;   // m
    double sigma_vr = 0.0;  // m/s
    double sigma_phi = 0.0; // rad
    double gamma = 0.0;

    double crb_d() const { return sigma_d * sigma_d; }
    double crb_vr() const { return sigma_vr * sigma_vr; }
};

// chi(k, f_v) = sum_n s[n] conj(s[n+k]) exp(j 2 pi f_v n / (N T)), n = 1..N,
// samples outside the pulse taken as zero.
std::complex<double> ambiguity_complex(const ComplexSignal& signal, long k, double f_v);
double ambiguity(const ComplexSignal& signal, long k, double f_v);

// Closed-form FIM in (D, V_R). The waveform is normalized to unit energy so
// gamma is the SNR of the matched-filter output.
FimMatrix fim(const ComplexSignal& signal, double f_c, double gamma);

// Finite-difference Hessian of Re chi at the origin, mapped to (D, V_R).
FimMatrix fim_numeric_oracle(const ComplexSignal& signal, double f_c, double gamma);

CrlbEstimate crlb(const FimMatrix& fim, double sigma_phi_fixed = default_sigma_phi);

FimMatrix scale_fim(const FimMatrix& fim, double gamma);

}
