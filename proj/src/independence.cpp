#include "entropylab/independence.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace entropylab {

namespace {

void validate_inputs(const std::vector<ClopenSet>& sets, const std::vector<int>& indices) {
    if (sets.empty()) throw std::invalid_argument("independence needs at least one set");
    for (const auto& a : sets)
        if (a.space() != sets.front().space())
            throw std::invalid_argument("independence sets from different subshifts");
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] < 0) throw std::invalid_argument("negative time index");
        if (i > 0 && indices[i] <= indices[i - 1])
            throw std::invalid_argument("index list must be strictly increasing");
    }
}

/// Depth-first search for a word meeting every window constraint
/// (position indices[p] must carry a word of sets[sigma[p]]), extended to
/// an admissible point. `variant` rotates symbol order to diversify
/// witnesses across calls.
class PatternSearch {
public:
    PatternSearch(const std::vector<ClopenSet>& sets, const std::vector<int>& indices,
                  const std::vector<std::size_t>& sigma, unsigned variant)
        : space_(sets.front().space()), variant_(variant) {
        validate_inputs(sets, indices);
        if (sigma.size() != indices.size())
            throw std::invalid_argument("pattern length must match index list");
        int window = 1;
        for (const auto& a : sets) window = std::max(window, a.window());
        for (const auto& a : sets) expanded_.push_back(a.expanded(window));
        for (std::size_t p = 0; p < sigma.size(); ++p)
            if (sigma[p] >= sets.size())
                throw std::invalid_argument("pattern value out of range");
        length_ = indices.empty() ? 1 : indices.back() + window;
        checks_.assign(length_ + 1, {});
        for (std::size_t p = 0; p < indices.size(); ++p)
            checks_[indices[p] + window].push_back({indices[p], sigma[p]});
        window_ = window;
    }

    std::optional<std::string> run() {
        word_.clear();
        if (dfs()) return word_;
        return std::nullopt;
    }

private:
    bool dfs() {
        int pos = static_cast<int>(word_.size());
        if (pos == length_) return space_.word_admissible(word_);
        for (int c = 0; c < space_.alphabet_size(); ++c) {
            int sym = (c + static_cast<int>(variant_)) % space_.alphabet_size();
            word_.push_back(space_.symbol(sym));
            bool ok = space_.locally_admissible(word_);
            if (ok)
                for (const auto& [start, si] : checks_[pos + 1])
                    if (!expanded_[si].words().count(word_.substr(start, window_))) {
                        ok = false;
                        break;
                    }
            if (ok && dfs()) return true;
            word_.pop_back();
        }
        return false;
    }

    const Subshift& space_;
    std::vector<ClopenSet> expanded_;
    std::vector<std::vector<std::pair<int, std::size_t>>> checks_;
    int length_ = 0;
    int window_ = 1;
    unsigned variant_ = 0;
    std::string word_;
};

std::size_t pattern_count(std::size_t k, std::size_t len, std::size_t guard) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < len; ++i) {
        if (total > guard / k) throw std::invalid_argument("pattern guard exceeded");
        total *= k;
    }
    return total;
}

bool next_pattern(std::vector<std::size_t>& sigma, std::size_t k) {
    for (std::size_t p = sigma.size(); p-- > 0;) {
        if (++sigma[p] < k) return true;
        sigma[p] = 0;
    }
    return false;
}

} // namespace

bool pattern_nonempty(const std::vector<ClopenSet>& sets, const std::vector<int>& indices,
                      const std::vector<std::size_t>& sigma) {
    return PatternSearch(sets, indices, sigma, 0).run().has_value();
}

std::optional<Point> pattern_witness(const std::vector<ClopenSet>& sets,
                                     const std::vector<int>& indices,
                                     const std::vector<std::size_t>& sigma,
                                     unsigned variant) {
    auto word = PatternSearch(sets, indices, sigma, variant).run();
    if (!word) return std::nullopt;
    const Subshift& space = sets.front().space();
    auto [extra, period] = space.least_tail(*word);
    return Point(space, *word + extra, period);
}

VerifyResult verify_independence(const std::vector<ClopenSet>& sets,
                                 const std::vector<int>& indices,
                                 const IndependenceGuards& guards) {
    validate_inputs(sets, indices);
    pattern_count(sets.size(), indices.size(), guards.max_patterns);
    std::vector<std::size_t> sigma(indices.size(), 0);
    if (indices.empty()) return {};
    do {
        if (!pattern_nonempty(sets, indices, sigma)) return {false, sigma};
    } while (next_pattern(sigma, sets.size()));
    return {};
}

DensityResult max_independence_density(const std::vector<ClopenSet>& sets, int horizon,
                                       const IndependenceGuards& guards) {
    validate_inputs(sets, {});
    if (horizon < 1) throw std::invalid_argument("horizon must be positive");
    std::vector<int> best, current;
    // Include-first branch and bound; downward closure makes incremental
    // verification sound, and include-first order makes the first optimum
    // lexicographically least.
    std::function<void(int)> go = [&](int t) {
        if (current.size() + static_cast<std::size_t>(horizon - t) <= best.size()) return;
        if (t == horizon) {
            if (current.size() > best.size()) best = current;
            return;
        }
        current.push_back(t);
        if (verify_independence(sets, current, guards).ok) go(t + 1);
        current.pop_back();
        go(t + 1);
    };
    go(0);
    return {best, Rat(best.size()) / horizon};
}

bool product_power_check(const Subshift& space, int m,
                         const std::vector<std::vector<ClopenSet>>& coordinate_sets,
                         const std::vector<int>& indices,
                         const IndependenceGuards& guards) {
    if (m < 1 || coordinate_sets.size() != static_cast<std::size_t>(m))
        throw std::invalid_argument("need one set tuple per product coordinate");
    for (const auto& sets : coordinate_sets) {
        for (const auto& a : sets)
            if (a.space() != space)
                throw std::invalid_argument("coordinate set on the wrong subshift");
        if (!verify_independence(sets, indices, guards).ok) return false;
    }
    return true;
}

bool measure_open_contains(const MeasureOpen& open, const DiscreteMeasure& mu) {
    if (open.n != 0 && !in_m_n(mu, open.n)) return false;
    return measure_of(mu, open.set) > open.eta;
}

bool verify_certificate(const IndependenceCertificate& cert) {
    const std::size_t k = cert.level == CertLevel::base ? cert.base_sets.size()
                                                        : cert.measure_opens.size();
    if (k == 0 || cert.indices.empty()) return false;
    for (int j : cert.indices)
        if (j < 0 || j >= cert.horizon) return false;
    std::vector<std::size_t> sigma(cert.indices.size(), 0);
    do {
        if (cert.level == CertLevel::base) {
            auto it = cert.base_witnesses.find(sigma);
            if (it == cert.base_witnesses.end()) return false;
            for (std::size_t p = 0; p < sigma.size(); ++p)
                if (!cert.base_sets[sigma[p]].contains(it->second.shifted(cert.indices[p])))
                    return false;
        } else {
            auto it = cert.measure_witnesses.find(sigma);
            if (it == cert.measure_witnesses.end()) return false;
            for (std::size_t p = 0; p < sigma.size(); ++p)
                if (!measure_open_contains(cert.measure_opens[sigma[p]],
                                           pushforward(it->second, cert.indices[p])))
                    return false;
        }
    } while (next_pattern(sigma, k));
    return true;
}

IndependenceError::IndependenceError(const std::string& what, std::vector<std::size_t> s)
    : std::runtime_error(what), sigma(std::move(s)) {}

IndependenceCertificate lift_base_to_measure(const std::vector<int>& indices,
                                             const ClopenSet& u0, const ClopenSet& u1,
                                             unsigned n, unsigned m,
                                             const IndependenceGuards& guards) {
    if (n < 1 || m != n)
        throw std::invalid_argument(
            "empirical lift needs m = n (witnesses must land in M_n)");
    if (indices.empty()) throw std::invalid_argument("empty index list");
    std::vector<ClopenSet> sets{u0, u1};
    validate_inputs(sets, indices);

    // Product independence over m coordinates, each carrying (U0, U1).
    std::vector<std::vector<ClopenSet>> coords(m, sets);
    for (const auto& coord : coords) {
        auto res = verify_independence(coord, indices, guards);
        if (!res.ok) {
            std::ostringstream msg;
            msg << "product independence fails at sigma = ";
            for (std::size_t v : res.counterexample) msg << v;
            throw IndependenceError(msg.str(), res.counterexample);
        }
    }

    IndependenceCertificate cert;
    cert.level = CertLevel::measure;
    Rat eta = Rat(n - 1) / n;
    cert.measure_opens = {{u0, eta, n}, {u1, eta, n}};
    cert.indices = indices;
    cert.horizon = indices.back() + 1;

    std::vector<std::size_t> sigma(indices.size(), 0);
    do {
        std::vector<Point> xs;
        for (unsigned i = 0; i < m; ++i) {
            auto w = pattern_witness(sets, indices, sigma, i);
            if (!w)
                throw IndependenceError("pattern lost a witness", sigma);
            xs.push_back(*w);
        }
        cert.measure_witnesses.emplace(sigma, r_m(xs));
    } while (next_pattern(sigma, 2));
    return cert;
}

IndependenceCertificate reduce_measure_to_base_finite_n(const IndependenceCertificate& cert) {
    if (cert.level != CertLevel::measure)
        throw std::invalid_argument("reduction expects a measure-level certificate");
    if (cert.measure_opens.empty() || cert.measure_witnesses.empty())
        throw std::invalid_argument("reduction needs witnesses");
    const unsigned n = cert.measure_opens.front().n;
    if (n == 0) throw std::invalid_argument("reduction needs finite n");
    for (const auto& open : cert.measure_opens) {
        if (open.n != n) throw std::invalid_argument("mixed empirical levels");
        if (open.eta != Rat(n - 1) / n)
            throw std::invalid_argument("threshold must be exactly (n-1)/n");
    }

    IndependenceCertificate out;
    out.level = CertLevel::base;
    for (const auto& open : cert.measure_opens) out.base_sets.push_back(open.set);
    out.indices = cert.indices;
    out.horizon = cert.horizon;

    std::vector<std::size_t> sigma(cert.indices.size(), 0);
    do {
        auto it = cert.measure_witnesses.find(sigma);
        if (it == cert.measure_witnesses.end())
            throw std::invalid_argument("missing witness for a pattern");
        const DiscreteMeasure& mu = it->second;
        if (!in_m_n(mu, n) || mu.support_size() > n)
            throw std::invalid_argument("witness is not an n-point empirical measure");
        for (std::size_t p = 0; p < sigma.size(); ++p) {
            const int j = cert.indices[p];
            const ClopenSet& u = cert.measure_opens[sigma[p]].set;
            if (!(measure_of(pushforward(mu, j), u) > Rat(n - 1) / n))
                throw std::invalid_argument("witness misses its threshold");
            // mass > (n-1)/n on <= n atoms of mass >= 1/n forces every
            // atom inside; assert it atom by atom.
            for (const auto& [x, mass] : mu.atoms())
                if (!u.contains(x.shifted(j))) {
                    std::ostringstream msg;
                    msg << "atom escapes its set: sigma = ";
                    for (std::size_t v : sigma) msg << v;
                    msg << ", time " << j << ", atom " << x.to_string();
                    throw IndependenceError(msg.str(), sigma);
                }
        }
        out.base_witnesses.emplace(sigma, mu.atoms().front().first);
    } while (next_pattern(sigma, cert.measure_opens.size()));
    return out;
}

} // namespace entropylab
