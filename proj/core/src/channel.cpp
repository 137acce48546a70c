#include "favprop/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace favprop {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be finite");
}

void fill_steering(std::span<cplx> out, double sine, double spacing) {
    const double rate = -2.0 * std::numbers::pi * spacing * sine;  // phase per antenna
    for (std::size_t m = 0; m < out.size(); ++m)
        out[m] = std::polar(1.0, rate * static_cast<double>(m));
}

std::vector<double> effective_betas(const ChannelModelSpec& spec, std::size_t k) {
    if (spec.betas.empty()) return std::vector<double>(k, 1.0);
    return spec.betas;
}

}  // namespace

ChannelModelSpec ChannelModelSpec::rayleigh() { return {}; }

ChannelModelSpec ChannelModelSpec::ur_los(double spacing) {
    ChannelModelSpec spec;
    spec.kind = ChannelModel::UrLos;
    spec.spacing = spacing;
    return spec;
}

ChannelModelSpec ChannelModelSpec::fixed_los(std::vector<double> angles, double spacing) {
    ChannelModelSpec spec;
    spec.kind = ChannelModel::FixedLos;
    spec.spacing = spacing;
    spec.angles = std::move(angles);
    return spec;
}

std::vector<cplx> steering_vector(double theta, std::size_t num_antennas, double spacing) {
    require_finite(theta, "steering_vector: theta");
    return steering_vector_from_sine(std::sin(theta), num_antennas, spacing);
}

std::vector<cplx> steering_vector_from_sine(double sine, std::size_t num_antennas,
                                            double spacing) {
    if (num_antennas == 0)
        throw std::invalid_argument("steering_vector: need at least one antenna");
    require_finite(sine, "steering_vector: sin(theta)");
    require_finite(spacing, "steering_vector: spacing");
    if (spacing <= 0.0) throw std::invalid_argument("steering_vector: spacing must be > 0");

    std::vector<cplx> v(num_antennas);
    fill_steering(v, sine, spacing);
    return v;
}

void validate_spec(const ChannelModelSpec& spec, std::size_t num_antennas,
                   std::size_t num_terminals) {
    if (num_antennas == 0 || num_terminals == 0)
        throw std::invalid_argument("generate: M and K must be positive");
    if (!spec.betas.empty()) {
        if (spec.betas.size() != num_terminals)
            throw std::invalid_argument("generate: betas length must equal K");
        for (double b : spec.betas)
            if (!std::isfinite(b) || b < 0.0)
                throw std::invalid_argument("generate: betas must be finite and >= 0");
    }
    if (spec.kind != ChannelModel::Rayleigh) {
        require_finite(spec.spacing, "generate: spacing");
        if (spec.spacing <= 0.0) throw std::invalid_argument("generate: spacing must be > 0");
    }
    if (spec.kind == ChannelModel::FixedLos) {
        if (spec.angles.size() != num_terminals)
            throw std::invalid_argument("generate: FixedLos needs K angles");
        for (double a : spec.angles)
            if (!std::isfinite(a) || a < -kHalfPi || a > kHalfPi)
                throw std::invalid_argument("generate: angles must lie in [-pi/2, pi/2]");
    } else if (!spec.angles.empty()) {
        throw std::invalid_argument("generate: angles are only valid for FixedLos");
    }
}

GeneratedChannel generate(const ChannelModelSpec& spec, std::size_t num_antennas,
                          std::size_t num_terminals, Rng& rng) {
    validate_spec(spec, num_antennas, num_terminals);

    const std::vector<double> betas = effective_betas(spec, num_terminals);
    GeneratedChannel out{ChannelMatrix(num_antennas, num_terminals), {}};
    ChannelMatrix& g = out.matrix;

    switch (spec.kind) {
        case ChannelModel::Rayleigh:
            for (std::size_t k = 0; k < num_terminals; ++k) {
                const double scale = std::sqrt(betas[k]);
                for (cplx& entry : g.col(k)) entry = scale * rng.cn01();
            }
            break;
        case ChannelModel::UrLos:
            out.angles.resize(num_terminals);
            for (std::size_t k = 0; k < num_terminals; ++k) {
                const double sine = rng.uniform_sym();
                out.angles[k] = std::asin(sine);
                fill_steering(g.col(k), sine, spec.spacing);
                const double scale = std::sqrt(betas[k]);
                if (scale != 1.0)
                    for (cplx& entry : g.col(k)) entry *= scale;
            }
            break;
        case ChannelModel::FixedLos:
            for (std::size_t k = 0; k < num_terminals; ++k) {
                fill_steering(g.col(k), std::sin(spec.angles[k]), spec.spacing);
                const double scale = std::sqrt(betas[k]);
                if (scale != 1.0)
                    for (cplx& entry : g.col(k)) entry *= scale;
            }
            break;
    }
    return out;
}

ChannelMatrix critical_pair(std::size_t num_antennas, double spacing) {
    if (num_antennas < 2)
        throw std::invalid_argument("critical_pair: need at least two antennas");
    require_finite(spacing, "critical_pair: spacing");
    if (spacing <= 0.0) throw std::invalid_argument("critical_pair: spacing must be > 0");

    ChannelMatrix g(num_antennas, 2);
    fill_steering(g.col(0), 0.0, spacing);
    fill_steering(g.col(1), 1.0 / static_cast<double>(num_antennas), spacing);
    return g;
}

}  // namespace favprop
