#include "oracles.hpp"

#include <cmath>

namespace ahs::testing {

namespace {

Dense identity2() {
    return Dense{2, {Cd{1, 0}, Cd{0, 0}, Cd{0, 0}, Cd{1, 0}}};
}

Dense pauli_x() {
    return Dense{2, {Cd{0, 0}, Cd{1, 0}, Cd{1, 0}, Cd{0, 0}}};
}

Dense pauli_y() {
    return Dense{2, {Cd{0, 0}, Cd{0, -1}, Cd{0, 1}, Cd{0, 0}}};
}

Dense number_op() {
    return Dense{2, {Cd{0, 0}, Cd{0, 0}, Cd{0, 0}, Cd{1, 0}}};
}

// Embeds one 2x2 factor per qubit; slot k of `factors` acts on bit k.
Dense embed(const std::vector<Dense>& factors) {
    Dense m{1, {Cd{1, 0}}};
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        m = kron(m, *it);
    }
    return m;
}

void add_scaled(Dense& acc, const Dense& term, double scale) {
    for (std::size_t i = 0; i < acc.data.size(); ++i) {
        acc.data[i] += scale * term.data[i];
    }
}

}  // namespace

Dense kron(const Dense& high, const Dense& low) {
    Dense out{high.dim * low.dim, {}};
    out.data.assign(out.dim * out.dim, Cd{0, 0});
    for (std::size_t rh = 0; rh < high.dim; ++rh) {
        for (std::size_t ch = 0; ch < high.dim; ++ch) {
            for (std::size_t rl = 0; rl < low.dim; ++rl) {
                for (std::size_t cl = 0; cl < low.dim; ++cl) {
                    out.at(rh * low.dim + rl, ch * low.dim + cl) =
                        high.at(rh, ch) * low.at(rl, cl);
                }
            }
        }
    }
    return out;
}

double lerp_waveform(const std::vector<double>& times, const std::vector<double>& values,
                     double t) {
    if (t <= times.front()) return values.front();
    if (t >= times.back()) return values.back();
    std::size_t hi = 1;
    while (times[hi] < t) ++hi;
    const double w = (t - times[hi - 1]) / (times[hi] - times[hi - 1]);
    return values[hi - 1] + w * (values[hi] - values[hi - 1]);
}

Dense kron_hamiltonian(const AhsProgram& p, double c6, double t_s) {
    const int n = p.reg.size();
    const std::size_t dim = std::size_t{1} << n;

    const double omega = lerp_waveform(p.drive.omega.times_s(), p.drive.omega.values(), t_s);
    const double phi = lerp_waveform(p.drive.phi.times_s(), p.drive.phi.values(), t_s);
    const double delta_g = lerp_waveform(p.drive.delta_global.times_s(),
                                         p.drive.delta_global.values(), t_s);
    const double delta_l =
        p.shift ? lerp_waveform(p.shift->delta_local.times_s(),
                                p.shift->delta_local.values(), t_s)
                : 0.0;

    Dense h{dim, std::vector<Cd>(dim * dim, Cd{0, 0})};
    std::vector<Dense> factors(static_cast<std::size_t>(n), identity2());
    const auto one_site = [&](int k, const Dense& op) {
        factors[static_cast<std::size_t>(k)] = op;
        const Dense full = embed(factors);
        factors[static_cast<std::size_t>(k)] = identity2();
        return full;
    };

    for (int k = 0; k < n; ++k) {
        add_scaled(h, one_site(k, pauli_x()), (omega / 2.0) * std::cos(phi));
        add_scaled(h, one_site(k, pauli_y()), -(omega / 2.0) * std::sin(phi));
        const double hk = p.shift ? p.shift->pattern[static_cast<std::size_t>(k)] : 0.0;
        add_scaled(h, one_site(k, number_op()), -(delta_g + delta_l * hk));
    }
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            const double dx = p.reg.sites[j].x_um - p.reg.sites[k].x_um;
            const double dy = p.reg.sites[j].y_um - p.reg.sites[k].y_um;
            const double d = std::sqrt(dx * dx + dy * dy);
            factors[static_cast<std::size_t>(j)] = number_op();
            factors[static_cast<std::size_t>(k)] = number_op();
            add_scaled(h, embed(factors), c6 / std::pow(d, 6.0));
            factors[static_cast<std::size_t>(j)] = identity2();
            factors[static_cast<std::size_t>(k)] = identity2();
        }
    }
    return h;
}

double resonant_rabi_pr(double omega, double t) {
    const double s = std::sin(omega * t / 2.0);
    return s * s;
}

double detuned_rabi_pr(double omega, double delta, double t) {
    const double w = std::sqrt(omega * omega + delta * delta);
    const double s = std::sin(w * t / 2.0);
    return (omega * omega) / (w * w) * s * s;
}

}  // namespace ahs::testing
