#pragma once

#include <cstddef>
#include <vector>

#include "favprop/complex_matrix.hpp"
#include "favprop/rng.hpp"

namespace favprop {

// Channel matrix G: rows are base-station antennas (M), columns are
// terminals (K); column k is the channel vector g_k of terminal k.
using ChannelMatrix = CMatrix;

enum class ChannelModel { Rayleigh, UrLos, FixedLos };

// Recipe for drawing a channel matrix: the fading model, per-terminal
// large-scale gains beta_k, the array spacing in wavelengths (line-of-sight
// kinds), and fixed arrival angles (FixedLos only).
struct ChannelModelSpec {
    ChannelModel kind = ChannelModel::Rayleigh;
    std::vector<double> betas;   // length K, entries >= 0; empty means all ones
    double spacing = 0.5;        // d / lambda, must be > 0
    std::vector<double> angles;  // radians in [-pi/2, pi/2]; FixedLos only

    static ChannelModelSpec rayleigh();
    static ChannelModelSpec ur_los(double spacing = 0.5);
    static ChannelModelSpec fixed_los(std::vector<double> angles, double spacing = 0.5);
};

struct GeneratedChannel {
    ChannelMatrix matrix;
    std::vector<double> angles;  // arrival angles drawn for UR-LoS (radians); empty otherwise
};

// Far-field uniform-linear-array response to a plane wave arriving from
// `theta` (radians off boresight): element m = exp(-i 2 pi m spacing sin(theta)),
// m = 0 .. M-1. Squared norm is exactly M.
std::vector<cplx> steering_vector(double theta, std::size_t num_antennas, double spacing);

// Same response parameterized by sin(theta) directly; avoids the asin/sin
// round trip when the sine is the natural variable (UR-LoS draws, beam grids).
std::vector<cplx> steering_vector_from_sine(double sine, std::size_t num_antennas,
                                            double spacing);

// Draw a channel matrix. Rayleigh: i.i.d. CN(0,1) small-scale fading scaled
// by sqrt(beta_k). UR-LoS: sin(theta_k) i.i.d. uniform on [-1,1). FixedLos:
// deterministic steering vectors at the given angles. Identical
// (spec, M, K, rng state) yields a bit-identical matrix.
GeneratedChannel generate(const ChannelModelSpec& spec, std::size_t num_antennas,
                          std::size_t num_terminals, Rng& rng);

// Throws std::invalid_argument when spec is inconsistent with (M, K).
void validate_spec(const ChannelModelSpec& spec, std::size_t num_antennas,
                   std::size_t num_terminals);

// The two-terminal fixed line-of-sight matrix with sin(theta_1) = 0 and
// sin(theta_2) = 1/M: the angle gap shrinks with the array, and the
// per-antenna inner product (1/M) g_1^H g_2 stays away from zero
// (modulus -> 2/pi) no matter how large M grows.
ChannelMatrix critical_pair(std::size_t num_antennas, double spacing = 0.5);

}  // namespace favprop
