#include "entropylab/covers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace entropylab {

bool is_standard_cover(const ClopenSet& u0, const ClopenSet& u1) {
    if (u0.space() != u1.space())
        throw std::invalid_argument("cover elements from different subshifts");
    return u0.unite(u1).is_full() && !u0.is_full() && !u1.is_full();
}

JoinCover::JoinCover(ClopenSet u0, ClopenSet u1, int depth)
    : u0_(std::move(u0)), u1_(std::move(u1)), depth_(depth) {
    if (u0_.space() != u1_.space())
        throw std::invalid_argument("cover elements from different subshifts");
    if (depth_ < 1) throw std::invalid_argument("join depth must be positive");
    if (u0_.is_empty() || u1_.is_empty())
        throw std::invalid_argument("cover elements must be nonempty");
    if (!u0_.unite(u1_).is_full())
        throw std::invalid_argument("cover elements must cover X");
    int L = std::max(u0_.window(), u1_.window());
    u0_ = u0_.expanded(L);
    u1_ = u1_.expanded(L);
    if (depth_ > 30) throw std::invalid_argument("join depth guard exceeded");
}

bool JoinCover::element_covers_word(std::uint32_t t, const std::string& w) const {
    const int L = u0_.window();
    for (int j = 0; j < depth_; ++j) {
        const auto& words = ((t >> j) & 1) ? u1_.words() : u0_.words();
        if (!words.count(w.substr(j, L))) return false;
    }
    return true;
}

ClopenSet JoinCover::element(std::uint32_t t) const {
    std::set<std::string> out;
    for (const auto& w : u0_.space().words(universe_window()))
        if (element_covers_word(t, w)) out.insert(w);
    return ClopenSet::from_words(u0_.space(), universe_window(), std::move(out));
}

namespace {

struct WordConstraint {
    std::uint32_t fixed = 0;  // positions whose choice is determined
    std::uint32_t forced = 0; // the determined bits (subset of fixed)
};

struct Instance {
    std::vector<std::string> universe;
    std::vector<WordConstraint> constraints;
    int depth = 0;
};

bool covers(const WordConstraint& c, std::uint32_t t) {
    return (t & c.fixed) == c.forced;
}

Instance build_instance(const JoinCover& join, const SetCoverGuards& guards) {
    Instance inst;
    inst.depth = join.depth();
    inst.universe = join.u0().space().words(join.universe_window(), guards.max_universe);
    const int L = join.u0().window();
    for (const auto& w : inst.universe) {
        WordConstraint c;
        for (int j = 0; j < inst.depth; ++j) {
            std::string piece = w.substr(j, L);
            bool a0 = join.u0().words().count(piece) > 0;
            bool a1 = join.u1().words().count(piece) > 0;
            if (!a0 && !a1)
                throw std::logic_error("cover invariant violated: word uncovered at position");
            if (a0 != a1) {
                c.fixed |= (1u << j);
                if (a1) c.forced |= (1u << j);
            }
        }
        inst.constraints.push_back(c);
    }
    return inst;
}

std::vector<std::uint32_t> candidate_vectors(const Instance& inst,
                                             const SetCoverGuards& guards) {
    if (inst.depth > 30 || (std::size_t(1) << inst.depth) > guards.max_vectors)
        throw std::runtime_error("set cover instance too large (vector guard)");
    std::vector<std::uint32_t> out;
    for (std::uint32_t t = 0; t < (std::uint32_t(1) << inst.depth); ++t)
        out.push_back(t);
    return out;
}

} // namespace

SubcoverResult greedy_subcover(const JoinCover& join, const SetCoverGuards& guards) {
    Instance inst = build_instance(join, guards);
    auto cands = candidate_vectors(inst, guards);
    std::vector<bool> covered(inst.universe.size(), false);
    std::size_t remaining = inst.universe.size();
    SubcoverResult res;
    while (remaining > 0) {
        std::uint32_t best_t = 0;
        std::size_t best_cnt = 0;
        for (std::uint32_t t : cands) {
            std::size_t cnt = 0;
            for (std::size_t i = 0; i < inst.universe.size(); ++i)
                if (!covered[i] && covers(inst.constraints[i], t)) ++cnt;
            if (cnt > best_cnt) { best_cnt = cnt; best_t = t; }
        }
        if (best_cnt == 0) throw std::logic_error("greedy cover stalled");
        res.vectors.push_back(best_t);
        for (std::size_t i = 0; i < inst.universe.size(); ++i)
            if (!covered[i] && covers(inst.constraints[i], best_t)) {
                covered[i] = true;
                --remaining;
            }
    }
    std::sort(res.vectors.begin(), res.vectors.end());
    res.size = res.vectors.size();
    return res;
}

SubcoverResult min_subcover(const JoinCover& join, const SetCoverGuards& guards) {
    Instance inst = build_instance(join, guards);

    // Words with every position determined are covered by a unique vector;
    // those vectors belong to every subcover.
    const std::uint32_t all = inst.depth >= 32
                                  ? ~0u
                                  : ((std::uint32_t(1) << inst.depth) - 1);
    std::set<std::uint32_t> forced_vectors;
    for (const auto& c : inst.constraints)
        if (c.fixed == all) forced_vectors.insert(c.forced);

    std::vector<std::size_t> open; // universe indices not covered by forced vectors
    for (std::size_t i = 0; i < inst.universe.size(); ++i) {
        bool done = false;
        for (std::uint32_t t : forced_vectors)
            if (covers(inst.constraints[i], t)) { done = true; break; }
        if (!done) open.push_back(i);
    }

    SubcoverResult res;
    res.vectors.assign(forced_vectors.begin(), forced_vectors.end());
    if (open.empty()) {
        res.size = res.vectors.size();
        return res;
    }

    // Branch and bound over the residual instance.
    auto cands = candidate_vectors(inst, guards);
    std::vector<std::vector<std::uint32_t>> word_covers(open.size());
    std::size_t max_cover = 1;
    for (std::size_t oi = 0; oi < open.size(); ++oi) {
        for (std::uint32_t t : cands)
            if (covers(inst.constraints[open[oi]], t)) word_covers[oi].push_back(t);
        if (word_covers[oi].empty())
            throw std::logic_error("open word with no covering vector");
    }
    for (std::uint32_t t : cands) {
        std::size_t cnt = 0;
        for (std::size_t oi = 0; oi < open.size(); ++oi)
            if (covers(inst.constraints[open[oi]], t)) ++cnt;
        max_cover = std::max(max_cover, cnt);
    }

    std::vector<std::uint32_t> best; // residual vectors of the best solution
    bool have_best = false;
    std::vector<std::uint32_t> chosen;
    std::vector<bool> covered(open.size(), false);

    std::function<void(std::size_t)> go = [&](std::size_t uncovered) {
        if (uncovered == 0) {
            if (!have_best || chosen.size() < best.size()) {
                best = chosen;
                have_best = true;
            }
            return;
        }
        std::size_t bound = chosen.size() + (uncovered + max_cover - 1) / max_cover;
        if (have_best && bound >= best.size()) return;
        // Branch on the uncovered word with the fewest covering vectors.
        std::size_t pick = open.size();
        for (std::size_t oi = 0; oi < open.size(); ++oi) {
            if (covered[oi]) continue;
            if (pick == open.size() ||
                word_covers[oi].size() < word_covers[pick].size())
                pick = oi;
        }
        for (std::uint32_t t : word_covers[pick]) {
            std::vector<std::size_t> newly;
            for (std::size_t oi = 0; oi < open.size(); ++oi)
                if (!covered[oi] && covers(inst.constraints[open[oi]], t)) {
                    covered[oi] = true;
                    newly.push_back(oi);
                }
            chosen.push_back(t);
            go(uncovered - newly.size());
            chosen.pop_back();
            for (std::size_t oi : newly) covered[oi] = false;
        }
    };
    go(open.size());
    if (!have_best) throw std::logic_error("set cover search found no solution");

    for (std::uint32_t t : best) res.vectors.push_back(t);
    std::sort(res.vectors.begin(), res.vectors.end());
    res.vectors.erase(std::unique(res.vectors.begin(), res.vectors.end()),
                      res.vectors.end());
    res.size = res.vectors.size();
    return res;
}

std::vector<ClopenSet> disjointify(const JoinCover& join,
                                   const std::vector<std::uint32_t>& subcover) {
    auto universe = join.u0().space().words(join.universe_window());
    std::set<std::string> taken;
    std::vector<ClopenSet> blocks;
    std::size_t covered_total = 0;
    for (std::uint32_t t : subcover) {
        std::set<std::string> block;
        for (const auto& w : universe)
            if (!taken.count(w) && join.element_covers_word(t, w)) block.insert(w);
        covered_total += block.size();
        if (block.empty())
            throw std::runtime_error(
                "disjointify produced an empty block; subcover not minimal");
        for (const auto& w : block) taken.insert(w);
        blocks.push_back(
            ClopenSet::from_words(join.u0().space(), join.universe_window(), std::move(block)));
    }
    if (covered_total != universe.size())
        throw std::invalid_argument("subcover does not cover X");
    return blocks;
}

EntropyProfile cover_entropy_profile(const ClopenSet& u0, const ClopenSet& u1,
                                     int n_max, bool exact,
                                     const SetCoverGuards& guards) {
    if (n_max < 1) throw std::invalid_argument("n_max must be positive");
    EntropyProfile prof;
    for (int n = 1; n <= n_max; ++n) {
        JoinCover join(u0, u1, n);
        SubcoverResult r = exact ? min_subcover(join, guards) : greedy_subcover(join, guards);
        EntropyProfileRow row;
        row.n = n;
        row.subcover_size = Int(static_cast<unsigned long long>(r.size));
        row.log2_over_n = std::log2(static_cast<double>(r.size)) / n;
        prof.rows.push_back(row);
    }
    prof.fekete_estimate = prof.rows.front().log2_over_n;
    for (const auto& row : prof.rows)
        prof.fekete_estimate = std::min(prof.fekete_estimate, row.log2_over_n);
    prof.last_value = prof.rows.back().log2_over_n;
    return prof;
}

} // namespace entropylab
