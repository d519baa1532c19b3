#include "qisim/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace qisim {

PulseShape PulseShape::constant(double omega0) {
    if (omega0 < 0)
        throw ValidationError("PulseShape: peak Rabi frequency must be >= 0");
    PulseShape p;
    p.kind_ = Kind::Constant;
    p.omega0_ = omega0;
    return p;
}

PulseShape PulseShape::gaussian(double omega0, double t0, double tau) {
    if (omega0 < 0)
        throw ValidationError("PulseShape: peak Rabi frequency must be >= 0");
    if (!(tau > 0))
        throw ValidationError("PulseShape: width tau must be > 0");
    PulseShape p;
    p.kind_ = Kind::Gaussian;
    p.omega0_ = omega0;
    p.t0_ = t0;
    p.tau_ = tau;
    return p;
}

PulseShape PulseShape::chirped_gaussian(double omega0, double t0, double tau, double chirp_rate) {
    PulseShape p = gaussian(omega0, t0, tau);
    p.kind_ = Kind::ChirpedGaussian;
    p.chirp_ = chirp_rate;
    return p;
}

PulseShape PulseShape::delayed_copy(PulseShape base, double beta_ratio, double tau_delay,
                                    double carrier_phase) {
    if (beta_ratio < 0)
        throw ValidationError("PulseShape: amplitude ratio beta must be >= 0");
    PulseShape p;
    p.kind_ = Kind::DelayedCopy;
    p.beta_ = beta_ratio;
    p.delay_ = tau_delay;
    p.phase_ = carrier_phase;
    p.base_ = std::make_shared<PulseShape>(std::move(base));
    return p;
}

PulseShape PulseShape::sum(PulseShape a, PulseShape b) {
    PulseShape p;
    p.kind_ = Kind::Sum;
    if (b.center() < a.center())
        std::swap(a, b);
    p.base_ = std::make_shared<PulseShape>(std::move(a));
    p.base2_ = std::make_shared<PulseShape>(std::move(b));
    return p;
}

PulseShape PulseShape::scaled(complexd factor) const {
    PulseShape p = *this;
    p.scale_ *= factor;
    return p;
}

double PulseShape::center() const {
    switch (kind_) {
        case Kind::DelayedCopy: return base_->center() + delay_;
        case Kind::Sum: return base_->center();
        default: return t0_;
    }
}

double PulseShape::width() const {
    switch (kind_) {
        case Kind::DelayedCopy: return base_->width();
        case Kind::Sum: return std::max(base_->width(), base2_->width());
        default: return tau_;
    }
}

complexd PulseShape::eval(double t) const {
    if (!std::isfinite(t))
        throw ValidationError("PulseShape::eval: non-finite time");
    switch (kind_) {
        case Kind::Constant:
            return scale_ * omega0_;
        case Kind::Gaussian:
        case Kind::ChirpedGaussian: {
            const double x = (t - t0_) / tau_;
            if (std::abs(x) > gaussian_cutoff)
                return 0.0;
            return scale_ * (omega0_ * std::exp(-x * x));
        }
        case Kind::DelayedCopy:
            return scale_ * beta_ * base_->eval(t - delay_) *
                   std::exp(imag_unit * phase_);
        case Kind::Sum:
            return scale_ * (base_->eval(t) + base2_->eval(t));
    }
    throw ValidationError("PulseShape::eval: bad kind");
}

complexd eval_envelope(const PulseShape& shape, double t) { return shape.eval(t); }

PulsePair::Detunings PulsePair::instantaneous_detunings(double t) const {
    const double D = Delta1 - chirp_p * (t - t_p);
    const double d = -delta + chirp_c * (t - t_c) - chirp_p * (t - t_p);
    return {D, d};
}

std::vector<double> linspace(double t0, double t1, int n) {
    if (n < 2)
        throw ValidationError("linspace: need at least 2 points");
    std::vector<double> g(static_cast<size_t>(n));
    const double h = (t1 - t0) / (n - 1);
    for (int i = 0; i < n; ++i)
        g[static_cast<size_t>(i)] = t0 + h * i;
    g.back() = t1;
    return g;
}

double pulse_area(const PulsePair& pair, std::span<const double> grid) {
    if (grid.size() < 2)
        throw ValidationError("pulse_area: grid needs at least 2 points");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw ValidationError("pulse_area: grid must be strictly increasing");

    auto omega_rms = [&](double t) {
        return std::hypot(std::abs(pair.pump.eval(t)), std::abs(pair.coupling.eval(t)));
    };

    // Composite Simpson over consecutive point pairs; quadratic fit handles
    // mildly non-uniform grids, trapezoid picks up a trailing odd interval.
    double area = 0.0;
    size_t i = 0;
    for (; i + 2 < grid.size() || i + 2 == grid.size(); i += 2) {
        if (i + 2 >= grid.size())
            break;
        const double x0 = grid[i], x1 = grid[i + 1], x2 = grid[i + 2];
        const double f0 = omega_rms(x0), f1 = omega_rms(x1), f2 = omega_rms(x2);
        const double h0 = x1 - x0, h1 = x2 - x1, h = x2 - x0;
        // exact for quadratics on non-uniform spacing
        area += (h / 6.0) * ((2.0 - h1 / h0) * f0 +
                             (h * h / (h0 * h1)) * f1 +
                             (2.0 - h0 / h1) * f2);
    }
    if (i + 1 < grid.size()) {
        const double x0 = grid[i], x1 = grid[i + 1];
        area += 0.5 * (x1 - x0) * (omega_rms(x0) + omega_rms(x1));
    }
    return area;
}

} // namespace qisim
