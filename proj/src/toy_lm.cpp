#include "star/toy_lm.hpp"

#include <algorithm>
#include <cmath>

#include "star/errors.hpp"

namespace star {

namespace {

struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

} // namespace

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

double unit_double(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

void ToyLmSpec::validate() const {
    const std::size_t v = vocab.empty() ? vocab_size : vocab.size();
    if (v < 2) throw error(errc::invalid_config, "toy vocabulary needs at least 2 symbols");
    if (!(oov_mass > 0.0 && oov_mass < 0.1))
        throw error(errc::invalid_config, "oov_mass must be in (0, 0.1)");
    if (!uniform && !(rare_mass > 0.0 && rare_mass < 0.5))
        throw error(errc::invalid_config, "rare_mass out of range");
    if (trigger_gain != 0.0 && trigger.empty())
        throw error(errc::invalid_config, "trigger_gain set but trigger string empty");
    if (!(early_gain_max >= 0.0))
        throw error(errc::invalid_config, "early_gain_max must be >= 0");
    if (!(early_burst_prob >= 0.0 && early_burst_prob <= 1.0))
        throw error(errc::invalid_config, "early_burst_prob must be in [0,1]");
}

ToyLm::ToyLm(ToyLmSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    if (!spec_.vocab.empty()) {
        symbols_ = spec_.vocab;
    } else {
        symbols_.reserve(spec_.vocab_size);
        for (std::size_t i = 0; i < spec_.vocab_size; ++i) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "s%02zu", i);
            symbols_.push_back(buf);
        }
    }

    const std::size_t v = symbols_.size();
    const std::size_t n_rows = spec_.unigram ? 1 : v + 1;
    SplitMix64 rng{spec_.chain_seed * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL};

    rows_.reserve(n_rows);
    for (std::size_t r = 0; r < n_rows; ++r) {
        std::vector<double> row(v);
        if (spec_.uniform) {
            std::fill(row.begin(), row.end(), 1.0 / static_cast<double>(v));
        } else {
            // Raw weights in [0.08, 1.08) keep rows varied but bounded away
            // from zero; the target symbol is pinned to rare_mass so that
            // tilts of up to -log(rare_mass) nats stay valid.
            double total = 0.0;
            for (std::size_t i = 0; i + 1 < v; ++i) {
                row[i] = 0.08 + unit_double(rng.next());
                total += row[i];
            }
            const double body = 1.0 - spec_.rare_mass;
            for (std::size_t i = 0; i + 1 < v; ++i) row[i] *= body / total;
            row[v - 1] = spec_.rare_mass;
        }
        rows_.push_back(std::move(row));
    }
}

std::size_t ToyLm::token_id(const std::string& token) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i] == token) return i;
    }
    return oov;
}

bool ToyLm::has_trigger(const std::string& context) const {
    return !spec_.trigger.empty() && context.find(spec_.trigger) != std::string::npos;
}

ToyLm::EarlyConditioning ToyLm::early_conditioning(const std::string& context) const {
    EarlyConditioning ec;
    if (spec_.early_window == 0 || spec_.early_burst_prob == 0.0) return ec;
    ec.bursty = unit_double(fnv1a64(context + "#burst")) < spec_.early_burst_prob;
    if (!ec.bursty) return ec;
    const std::size_t w = spec_.early_window;
    if (w <= 3) {
        ec.burst_len = w;
    } else {
        const double u = unit_double(fnv1a64(context + "#len"));
        ec.burst_len = std::min(w, 3 + static_cast<std::size_t>(u * static_cast<double>(w - 2)));
    }
    const double u = unit_double(fnv1a64(context + "#gain"));
    ec.gain = spec_.early_gain_max <= 1.0 ? u * spec_.early_gain_max
                                          : 1.0 + u * (spec_.early_gain_max - 1.0);
    return ec;
}

const std::vector<double>& ToyLm::raw_row(std::optional<std::size_t> prev) const {
    if (spec_.unigram || !prev.has_value() || *prev >= symbols_.size()) return rows_[0];
    return rows_[*prev + 1];
}

std::vector<double> ToyLm::tilt_row(std::vector<double> row, std::size_t target,
                                    double gain) const {
    const double p = row[target];
    const double q = p * std::exp(gain);
    if (q > 1.0) {
        throw error(errc::invalid_amplification,
                    "amplification pushes target probability above 1");
    }
    const double scale = (1.0 - q) / (1.0 - p);
    for (double& x : row) x *= scale;
    row[target] = q;
    return row;
}

std::vector<double> ToyLm::apply_temperature(const std::vector<double>& row,
                                             double temperature) {
    // temperature == 1 must return the native rows bit-for-bit.
    if (temperature == 1.0) return row;
    const double inv_t = 1.0 / temperature;
    std::vector<double> out(row.size());
    double z = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
        out[i] = std::pow(row[i], inv_t);
        z += out[i];
    }
    for (double& x : out) x /= z;
    return out;
}

std::vector<double> ToyLm::base_row(std::optional<std::size_t> prev, double temperature) const {
    return apply_temperature(raw_row(prev), temperature);
}

std::vector<double> ToyLm::conditional_row(const std::string& context, std::size_t step,
                                           std::optional<std::size_t> prev,
                                           double temperature) const {
    std::vector<double> row = raw_row(prev);
    if (has_trigger(context)) {
        if (spec_.trigger_gain != 0.0) {
            row = tilt_row(std::move(row), target_symbol(), spec_.trigger_gain);
        }
        return apply_temperature(row, temperature);
    }
    const EarlyConditioning ec = early_conditioning(context);
    if (ec.bursty && step < ec.burst_len && ec.gain != 0.0) {
        row = tilt_row(std::move(row), target_symbol(), ec.gain);
    }
    return apply_temperature(row, temperature);
}

double ToyLm::oov_logprob(std::optional<std::size_t> /*prev*/, double /*temperature*/) const {
    // Foreign tokens (the vocabulary is closed) score a fixed floor mass.
    return std::log(spec_.oov_mass);
}

std::vector<double> ToyLm::score_unconditional(std::span<const std::string> tokens,
                                               double temperature) const {
    std::vector<double> out;
    out.reserve(tokens.size());
    std::optional<std::size_t> prev;
    for (const std::string& tok : tokens) {
        const std::size_t id = token_id(tok);
        if (id == oov) {
            out.push_back(oov_logprob(prev, temperature));
            prev.reset();
        } else {
            out.push_back(std::log(base_row(prev, temperature)[id]));
            prev = id;
        }
    }
    return out;
}

std::vector<double> ToyLm::score_conditional(const std::string& context,
                                             std::span<const std::string> tokens,
                                             double temperature) const {
    std::vector<double> out;
    out.reserve(tokens.size());
    std::optional<std::size_t> prev;
    for (std::size_t t = 0; t < tokens.size(); ++t) {
        const std::size_t id = token_id(tokens[t]);
        if (id == oov) {
            out.push_back(oov_logprob(prev, temperature));
            prev.reset();
        } else {
            out.push_back(std::log(conditional_row(context, t, prev, temperature)[id]));
            prev = id;
        }
    }
    return out;
}

std::size_t ToyLm::sample_index(std::span<const double> row, double u) {
    double c = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
        c += row[i];
        if (u < c) return i;
    }
    return row.size() - 1;
}

ToyLm::Generated ToyLm::generate(const std::string& context, std::size_t length,
                                 double temperature, std::uint64_t seed) const {
    Generated g;
    g.tokens.reserve(length);
    g.log_q.reserve(length);
    SplitMix64 rng{seed ^ 0xA24BAED4963EE407ULL};
    std::optional<std::size_t> prev;
    for (std::size_t t = 0; t < length; ++t) {
        const std::vector<double> row = conditional_row(context, t, prev, temperature);
        const std::size_t id = sample_index(row, unit_double(rng.next()));
        g.tokens.push_back(symbols_[id]);
        g.log_q.push_back(std::log(row[id]));
        prev = id;
    }
    return g;
}

} // namespace star
