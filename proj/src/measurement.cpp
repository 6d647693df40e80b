#include "ahs/measurement.hpp"

#include <string>

#include "ahs/rng.hpp"

namespace ahs {

namespace {

constexpr std::uint64_t kOutcomeSubstream = 0;
constexpr std::uint64_t kDetectionSubstream = 1;

// Marginals of the low-k bits for every k: levels[k][j] = P(b_0..b_{k-1} = j).
// levels[0] = {1}; levels[n] is the full distribution.
std::vector<std::vector<double>> prefix_marginals(const std::vector<double>& probs,
                                                  int n) {
    std::vector<std::vector<double>> levels(static_cast<std::size_t>(n) + 1);
    levels[static_cast<std::size_t>(n)] = probs;
    for (int k = n; k > 0; --k) {
        const auto& src = levels[static_cast<std::size_t>(k)];
        auto& dst = levels[static_cast<std::size_t>(k) - 1];
        dst.assign(std::size_t{1} << (k - 1), 0.0);
        for (std::size_t j = 0; j < dst.size(); ++j) {
            dst[j] = src[j] + src[j + dst.size()];
        }
    }
    return levels;
}

}  // namespace

std::vector<double> probabilities(const QuantumState& state) {
    std::vector<double> p(state.dim());
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = std::norm(state.amplitudes()[i]);
    }
    return p;
}

ShotBatch sample_shots(const QuantumState& state, int shots, std::uint64_t seed,
                       DetectionError detection) {
    if (shots < 1) {
        throw AhsError("shot count must be at least 1");
    }
    if (!(detection.eps_g >= 0.0 && detection.eps_g < 0.5 &&
          detection.eps_r >= 0.0 && detection.eps_r < 0.5)) {
        throw AhsError("detection error probabilities must lie in [0, 0.5)");
    }
    const int n = state.n_atoms();
    const auto levels = prefix_marginals(probabilities(state), n);
    const bool flips_enabled = detection.eps_g > 0.0 || detection.eps_r > 0.0;

    ShotBatch batch{n, seed, {}};
    batch.rows.reserve(static_cast<std::size_t>(shots));
    for (int s = 0; s < shots; ++s) {
        const std::uint64_t shot_seed = rng::split(seed, static_cast<std::uint64_t>(s));
        rng::Stream outcome(rng::split(shot_seed, kOutcomeSubstream));

        std::uint32_t bits = 0;
        std::uint32_t prefix = 0;  // low-k bits drawn so far
        for (int k = 0; k < n; ++k) {
            const auto& lvl = levels[static_cast<std::size_t>(k)];
            const auto& nxt = levels[static_cast<std::size_t>(k) + 1];
            const double p_prefix = lvl[prefix];
            const double p_one = p_prefix > 0.0 ? nxt[prefix | (1u << k)] / p_prefix : 0.0;
            if (outcome.uniform() < p_one) {
                prefix |= 1u << k;
                bits |= 1u << k;
            }
        }
        if (flips_enabled) {
            rng::Stream det(rng::split(shot_seed, kDetectionSubstream));
            for (int k = 0; k < n; ++k) {
                const double u = det.uniform();
                const bool is_r = (bits >> k) & 1u;
                if (!is_r && u < detection.eps_g) bits |= 1u << k;
                else if (is_r && u < detection.eps_r) bits &= ~(1u << k);
            }
        }
        batch.rows.push_back(bits);
    }
    return batch;
}

CountSummary rydberg_counts(const ShotBatch& batch) {
    CountSummary summary{std::vector<long>(static_cast<std::size_t>(batch.n_qubits), 0),
                         batch.shots()};
    for (const std::uint32_t row : batch.rows) {
        for (int k = 0; k < batch.n_qubits; ++k) {
            if ((row >> k) & 1u) {
                ++summary.counts[static_cast<std::size_t>(k)];
            }
        }
    }
    return summary;
}

std::string shot_batch_csv(const ShotBatch& batch) {
    std::string out = "shot";
    for (int k = 0; k < batch.n_qubits; ++k) {
        out += ",q" + std::to_string(k);
    }
    out += "\n";
    for (int s = 0; s < batch.shots(); ++s) {
        out += std::to_string(s);
        for (int k = 0; k < batch.n_qubits; ++k) {
            out += (batch.rows[static_cast<std::size_t>(s)] >> k) & 1u ? ",1" : ",0";
        }
        out += "\n";
    }
    return out;
}

}  // namespace ahs
