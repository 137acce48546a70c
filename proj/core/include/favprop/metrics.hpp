#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "favprop/channel.hpp"
#include "favprop/complex_matrix.hpp"

namespace favprop {

enum class IpNormalization { Raw, PerAntenna };

// Per-realization favorability metrics of a channel matrix.
//
// `gramian_spectrum` holds the K eigenvalues of G^H G in ascending order.
// `condition_number` is max/min over that spectrum -- note this is the
// Gramian convention, i.e. the square of the usual 2-norm condition number
// of G itself.
struct FavorabilityReport {
    double capacity = 0.0;          // bits/s/Hz
    double hadamard_bound = 0.0;    // bits/s/Hz
    double jensen_bound = 0.0;      // bits/s/Hz
    double delta_c = 0.0;           // (hadamard_bound - capacity) / capacity
    double condition_number = 0.0;  // may be +infinity
    double snr = 0.0;               // rho
    std::vector<double> gramian_spectrum;
};

// K x K matrix of inner products g_i^H g_j; Hermitian by construction.
CMatrix gramian(const ChannelMatrix& g);

// Eigenvalues of the Gramian, ascending. Values within -1e-9 * lambda_max of
// zero are rounding debris of a PSD matrix and are clamped to 0; anything
// more negative is reported as an internal error.
std::vector<double> gramian_spectrum(const ChannelMatrix& g);

std::vector<double> column_squared_norms(const ChannelMatrix& g);

// Sum-capacity log2|I + rho G^H G| evaluated over the Gramian spectrum.
double sum_capacity(const ChannelMatrix& g, double rho);
double sum_capacity_from_spectrum(std::span<const double> spectrum, double rho);

// sum_k log2(1 + rho ||g_k||^2); meets the capacity exactly when the Gramian
// is diagonal.
double hadamard_bound(const ChannelMatrix& g, double rho);

// K log2(1 + rho/K ||G||_F^2); at least the Hadamard bound, equal only when
// all column norms agree.
double jensen_bound(const ChannelMatrix& g, double rho);

// Largest over smallest Gramian eigenvalue; +infinity when the spectrum is
// rank deficient (smallest eigenvalue below 1e-12 of the largest).
double condition_number(const ChannelMatrix& g);
double condition_number_from_spectrum(std::span<const double> spectrum);

// Relative gap between the Hadamard bound and the capacity; zero exactly for
// mutually orthogonal columns. Throws std::domain_error when the capacity is
// zero (the gap is undefined for an all-zero channel).
double distance_from_fp(const ChannelMatrix& g, double rho);

// g_i^H g_j for all i < j in lexicographic order; PerAntenna divides by M.
std::vector<cplx> pairwise_inner_products(const ChannelMatrix& g, IpNormalization norm);

// True iff every column is nonzero and every normalized pairwise inner
// product |g_i^H g_j| / (||g_i|| ||g_j||) is at most epsilon.
bool is_favorable(const ChannelMatrix& g, double epsilon);

FavorabilityReport analyze(const ChannelMatrix& g, double rho);

// Closed-form variance of (1/M) g_i^H g_j across realizations (i != j):
// Rayleigh 1/M; UR-LoS (valid at spacing 1/2 only) 1/M - 1/M^2.
double predicted_ip_variance(ChannelModel model, std::size_t num_antennas);

// Closed-form variance of (1/M^2) |g_i^H g_j|^2:
// Rayleigh (M+2)/M^3; UR-LoS (M-1) M (2M-1) / (3 M^4).
double predicted_ip_sq_variance(ChannelModel model, std::size_t num_antennas);

struct VariancePredictor {
    ChannelModel model = ChannelModel::Rayleigh;  // Rayleigh or UrLos
    std::size_t num_antennas = 1;

    double ip_variance() const { return predicted_ip_variance(model, num_antennas); }
    double ip_sq_variance() const { return predicted_ip_sq_variance(model, num_antennas); }
};

}  // namespace favprop
