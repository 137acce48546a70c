#include "favprop/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "favprop/hermitian_eig.hpp"

namespace favprop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_rho(double rho) {
    if (!std::isfinite(rho) || rho <= 0.0)
        throw std::invalid_argument("rho must be finite and > 0");
}

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

}  // namespace

CMatrix gramian(const ChannelMatrix& g) {
    const std::size_t k = g.cols();
    CMatrix w(k, k);
    for (std::size_t j = 0; j < k; ++j) {
        w(j, j) = squared_norm(g.col(j));
        for (std::size_t i = 0; i < j; ++i) {
            const cplx v = inner_product(g.col(i), g.col(j));
            w(i, j) = v;
            w(j, i) = std::conj(v);
        }
    }
    return w;
}

std::vector<double> gramian_spectrum(const ChannelMatrix& g) {
    std::vector<double> ev = hermitian_eigenvalues(gramian(g));
    const double largest = std::max(ev.back(), 0.0);
    for (double& v : ev) {
        if (v < 0.0) {
            if (v < -1e-9 * largest)
                throw std::runtime_error(
                    "gramian_spectrum: eigenvalue below the PSD rounding band");
            v = 0.0;
        }
    }
    return ev;
}

std::vector<double> column_squared_norms(const ChannelMatrix& g) {
    std::vector<double> norms(g.cols());
    for (std::size_t k = 0; k < g.cols(); ++k) norms[k] = squared_norm(g.col(k));
    return norms;
}

double sum_capacity_from_spectrum(std::span<const double> spectrum, double rho) {
    require_rho(rho);
    double bits = 0.0;
    for (double lambda : spectrum) bits += log2_1p(rho * lambda);
    return bits;
}

double sum_capacity(const ChannelMatrix& g, double rho) {
    return sum_capacity_from_spectrum(gramian_spectrum(g), rho);
}

double hadamard_bound(const ChannelMatrix& g, double rho) {
    require_rho(rho);
    double bits = 0.0;
    for (std::size_t k = 0; k < g.cols(); ++k) bits += log2_1p(rho * squared_norm(g.col(k)));
    return bits;
}

double jensen_bound(const ChannelMatrix& g, double rho) {
    require_rho(rho);
    const double k = static_cast<double>(g.cols());
    return k * log2_1p(rho / k * squared_norm(g.data()));
}

double condition_number_from_spectrum(std::span<const double> spectrum) {
    if (spectrum.empty())
        throw std::invalid_argument("condition_number: empty spectrum");
    const double largest = spectrum.back();
    const double smallest = spectrum.front();
    // rank floor: treat eigenvalues this far below the top as zero
    if (smallest <= 1e-12 * largest || largest == 0.0) return kInf;
    return largest / smallest;
}

double condition_number(const ChannelMatrix& g) {
    return condition_number_from_spectrum(gramian_spectrum(g));
}

double distance_from_fp(const ChannelMatrix& g, double rho) {
    const double capacity = sum_capacity(g, rho);
    if (capacity <= 0.0)
        throw std::domain_error("distance_from_fp: undefined for zero capacity");
    return (hadamard_bound(g, rho) - capacity) / capacity;
}

std::vector<cplx> pairwise_inner_products(const ChannelMatrix& g, IpNormalization norm) {
    const std::size_t k = g.cols();
    if (k < 2)
        throw std::invalid_argument("pairwise_inner_products: need at least two columns");
    const double scale =
        norm == IpNormalization::PerAntenna ? 1.0 / static_cast<double>(g.rows()) : 1.0;
    std::vector<cplx> values;
    values.reserve(k * (k - 1) / 2);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            values.push_back(scale * inner_product(g.col(i), g.col(j)));
    return values;
}

bool is_favorable(const ChannelMatrix& g, double epsilon) {
    if (!std::isfinite(epsilon) || epsilon < 0.0)
        throw std::invalid_argument("is_favorable: epsilon must be finite and >= 0");
    const std::vector<double> norms = column_squared_norms(g);
    for (double n2 : norms)
        if (n2 <= 0.0) return false;
    for (std::size_t i = 0; i < g.cols(); ++i)
        for (std::size_t j = i + 1; j < g.cols(); ++j) {
            const double ip = std::abs(inner_product(g.col(i), g.col(j)));
            if (ip > epsilon * std::sqrt(norms[i] * norms[j])) return false;
        }
    return true;
}

FavorabilityReport analyze(const ChannelMatrix& g, double rho) {
    FavorabilityReport report;
    report.snr = rho;
    report.gramian_spectrum = gramian_spectrum(g);
    report.capacity = sum_capacity_from_spectrum(report.gramian_spectrum, rho);
    report.hadamard_bound = hadamard_bound(g, rho);
    report.jensen_bound = jensen_bound(g, rho);
    report.condition_number = condition_number_from_spectrum(report.gramian_spectrum);
    if (report.capacity <= 0.0)
        throw std::domain_error("analyze: distance from favorable propagation is undefined "
                                "for zero capacity");
    report.delta_c = (report.hadamard_bound - report.capacity) / report.capacity;
    return report;
}

double predicted_ip_variance(ChannelModel model, std::size_t num_antennas) {
    if (num_antennas == 0)
        throw std::invalid_argument("predicted_ip_variance: M must be positive");
    const double m = static_cast<double>(num_antennas);
    switch (model) {
        case ChannelModel::Rayleigh:
            return 1.0 / m;
        case ChannelModel::UrLos:
            return 1.0 / m - 1.0 / (m * m);
        default:
            throw std::invalid_argument("predicted_ip_variance: no closed form for this model");
    }
}

double predicted_ip_sq_variance(ChannelModel model, std::size_t num_antennas) {
    if (num_antennas == 0)
        throw std::invalid_argument("predicted_ip_sq_variance: M must be positive");
    const double m = static_cast<double>(num_antennas);
    switch (model) {
        case ChannelModel::Rayleigh:
            return (m + 2.0) / (m * m * m);
        case ChannelModel::UrLos:
            return (m - 1.0) * m * (2.0 * m - 1.0) / (3.0 * m * m * m * m);
        default:
            throw std::invalid_argument(
                "predicted_ip_sq_variance: no closed form for this model");
    }
}

}  // namespace favprop
