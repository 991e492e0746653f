#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace star {

// First-order Markov chain over a small symbol vocabulary. Every row reserves
// a small out-of-vocabulary mass, and (outside uniform mode) pins the last
// symbol — the amplification target — to a fixed low probability so that
// multiplicative tilts of several nats stay valid.
//
// The conditional (input-aware) distribution differs from the base chain in
// two ways:
//   * a trigger substring in the input tilts the target symbol by
//     trigger_gain nats at every step;
//   * inputs without a trigger may carry an "early topic burst": for a
//     hash-derived prefix of steps the target symbol is tilted by a
//     hash-derived gain, modeling the input-conditioned instability of early
//     decoding that the burn-in period exists to absorb.
// Both rules are pure functions of the input string, so scoring a sequence
// later reproduces exactly the probabilities seen at generation time.
struct ToyLmSpec {
    std::size_t vocab_size = 16;
    std::uint64_t chain_seed = 1;
    bool uniform = false;   // exactly uniform rows, no pinned target mass
    bool unigram = false;   // all contexts share the begin-of-sequence row
    double rare_mass = 0.004;
    double oov_mass = 1e-4;
    std::string trigger = "@_@";
    double trigger_gain = 0.0;
    std::size_t early_window = 0;
    double early_gain_max = 0.0;
    double early_burst_prob = 0.0;
    std::vector<std::string> vocab; // optional explicit symbols; default s00..sNN

    void validate() const;
};

class ToyLm {
public:
    explicit ToyLm(ToyLmSpec spec);

    const ToyLmSpec& spec() const noexcept { return spec_; }
    std::size_t vocab_size() const noexcept { return symbols_.size(); }
    const std::vector<std::string>& vocab() const noexcept { return symbols_; }

    // Index of the amplification-target symbol (the last one).
    std::size_t target_symbol() const noexcept { return symbols_.size() - 1; }

    static constexpr std::size_t oov = static_cast<std::size_t>(-1);
    std::size_t token_id(const std::string& token) const;

    // Hash-derived early-conditioning parameters for an input string.
    struct EarlyConditioning {
        bool bursty = false;
        std::size_t burst_len = 0;
        double gain = 0.0;
    };
    EarlyConditioning early_conditioning(const std::string& context) const;
    bool has_trigger(const std::string& context) const;

    // Transition row given the previous symbol (nullopt = begin of sequence;
    // an oov previous token also falls back to the begin-of-sequence row),
    // optionally temperature-adjusted. Rows are proper distributions over the
    // closed vocabulary; tokens outside it score the fixed oov floor.
    std::vector<double> base_row(std::optional<std::size_t> prev, double temperature = 1.0) const;
    std::vector<double> conditional_row(const std::string& context, std::size_t step,
                                        std::optional<std::size_t> prev,
                                        double temperature = 1.0) const;
    double oov_logprob(std::optional<std::size_t> prev, double temperature = 1.0) const;

    // Log-probability streams for a fixed token sequence.
    std::vector<double> score_unconditional(std::span<const std::string> tokens,
                                            double temperature = 1.0) const;
    std::vector<double> score_conditional(const std::string& context,
                                          std::span<const std::string> tokens,
                                          double temperature = 1.0) const;

    struct Generated {
        std::vector<std::string> tokens;
        std::vector<double> log_q; // conditional log-probs of the sampled tokens
    };
    // Autoregressive sample from the conditional distribution; fully
    // deterministic for a given seed.
    Generated generate(const std::string& context, std::size_t length, double temperature,
                       std::uint64_t seed) const;

    // Sampling helper shared with corpus synthesis: draws an index from a row
    // using an inverse-CDF walk over a uniform double in [0,1).
    static std::size_t sample_index(std::span<const double> row, double u);

private:
    ToyLmSpec spec_;
    std::vector<std::string> symbols_;
    std::vector<std::vector<double>> rows_; // rows_[0] = BOS, rows_[1+i] = after symbol i

    const std::vector<double>& raw_row(std::optional<std::size_t> prev) const;
    std::vector<double> tilt_row(std::vector<double> row, std::size_t target, double gain) const;
    static std::vector<double> apply_temperature(const std::vector<double>& row,
                                                 double temperature);
};

// 64-bit FNV-1a; the stable string hash behind seeded corpus construction.
std::uint64_t fnv1a64(std::string_view data);

// Uniform double in [0,1) from 53 bits of a 64-bit hash/PRNG word.
double unit_double(std::uint64_t bits);

} // namespace star
