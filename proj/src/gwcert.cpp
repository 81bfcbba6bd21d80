#include "entropylab/gwcert.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace entropylab {

namespace {

bool next_pattern(std::vector<std::size_t>& sigma, std::size_t k) {
    for (std::size_t p = sigma.size(); p-- > 0;) {
        if (++sigma[p] < k) return true;
        sigma[p] = 0;
    }
    return false;
}

/// A concrete point inside a nonempty clopen set: least listed word
/// extended by the least admissible tail.
Point some_point(const ClopenSet& a) {
    if (a.is_empty()) throw std::invalid_argument("no point in the empty set");
    const std::string& w = *a.words().begin();
    auto [extra, period] = a.space().least_tail(w);
    return Point(a.space(), w + extra, period);
}

Point least_point(const Subshift& s) {
    std::string w = s.words(1).front();
    auto [extra, period] = s.least_tail(w);
    return Point(s, w + extra, period);
}

} // namespace

ZeroOneMatrix build_matrix(const JoinCover& join, const std::vector<std::uint32_t>& subcover,
                           const std::vector<ClopenSet>& blocks) {
    if (subcover.size() != blocks.size())
        throw std::invalid_argument("one block per subcover vector required");
    ZeroOneMatrix m;
    m.rows = blocks.size();
    m.cols = static_cast<std::size_t>(join.depth());
    const int L = join.u0().window();
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].is_empty()) throw std::invalid_argument("empty block");
        const ClopenSet block = blocks[i].expanded(join.universe_window());
        std::vector<int> row(m.cols, 0);
        for (std::size_t j = 0; j < m.cols; ++j) {
            bool fits0 = true, fits1 = true;
            for (const auto& w : block.words()) {
                std::string piece = w.substr(j, L);
                fits0 = fits0 && join.u0().words().count(piece) > 0;
                fits1 = fits1 && join.u1().words().count(piece) > 0;
            }
            if (!fits0 && !fits1)
                throw std::logic_error("block fits neither cover element at some time");
            if (fits0 && fits1)
                row[j] = static_cast<int>((subcover[i] >> j) & 1); // tie-break
            else
                row[j] = fits1 ? 1 : 0;
        }
        m.t.push_back(std::move(row));
    }
    return m;
}

std::vector<Rat> phi_apply(const ZeroOneMatrix& m, const std::vector<Rat>& r) {
    if (r.size() != m.rows) throw std::invalid_argument("phi dimension mismatch");
    std::vector<Rat> out(m.cols, Rat(0));
    Rat l1(0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        l1 += rat_abs(r[i]);
        for (std::size_t j = 0; j < m.cols; ++j)
            if (m.t[i][j]) out[j] += r[i];
    }
    for (const Rat& v : out)
        if (rat_abs(v) > l1) throw std::logic_error("phi contraction violated");
    return out;
}

std::vector<Rat> measure_profile(const DiscreteMeasure& mu, const std::vector<ClopenSet>& blocks) {
    std::vector<Rat> out(blocks.size(), Rat(0));
    for (const auto& [x, mass] : mu.atoms()) {
        std::size_t hits = 0;
        for (std::size_t i = 0; i < blocks.size(); ++i)
            if (blocks[i].contains(x)) {
                out[i] += mass;
                ++hits;
            }
        if (hits != 1) throw std::invalid_argument("blocks do not partition the space");
    }
    Rat total(0);
    for (const Rat& v : out) {
        if (v < 0) throw std::logic_error("negative block mass");
        total += v;
    }
    if (total != 1) throw std::logic_error("profile does not sum to one");
    return out;
}

namespace {

Rat max_norm_distance(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    Rat d(0);
    for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, rat_abs(a[j] - b[j]));
    return d;
}

} // namespace

SeparationReport separation_count(const std::vector<std::vector<Rat>>& points, const Rat& eps,
                                  SeparationMode mode, const SeparationGuards& guards) {
    if (points.empty()) throw std::invalid_argument("no points to separate");
    const std::size_t dim = points.front().size();
    for (const auto& p : points)
        if (p.size() != dim) throw std::invalid_argument("mixed dimensions");
    if (eps <= 0) throw std::invalid_argument("eps must be positive");

    std::vector<std::vector<Rat>> pts = points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    SeparationReport rep;
    rep.eps = eps;
    const std::size_t n = pts.size();
    rep.pairs_checked = n * (n - 1) / 2;

    std::vector<std::vector<bool>> sep(n, std::vector<bool>(n, false));
    bool complete = true;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            bool s = max_norm_distance(pts[a], pts[b]) >= eps;
            sep[a][b] = sep[b][a] = s;
            complete = complete && s;
        }

    std::vector<std::size_t> chosen;
    if (complete) {
        for (std::size_t a = 0; a < n; ++a) chosen.push_back(a);
    } else if (mode == SeparationMode::greedy) {
        for (std::size_t a = 0; a < n; ++a) {
            bool ok = true;
            for (std::size_t c : chosen) ok = ok && sep[a][c];
            if (ok) chosen.push_back(a);
        }
    } else {
        if (n > guards.max_points_exact)
            throw std::invalid_argument("exact separation guard exceeded");
        // max clique on the separation graph, branch and bound
        std::vector<std::size_t> best, cur;
        std::function<void(std::vector<std::size_t>)> go = [&](std::vector<std::size_t> cand) {
            if (cur.size() + cand.size() <= best.size()) return;
            if (cand.empty()) {
                best = cur;
                return;
            }
            while (!cand.empty()) {
                if (cur.size() + cand.size() <= best.size()) return;
                std::size_t v = cand.back();
                cand.pop_back();
                cur.push_back(v);
                std::vector<std::size_t> next;
                for (std::size_t u : cand)
                    if (sep[v][u]) next.push_back(u);
                go(next);
                cur.pop_back();
            }
        };
        std::vector<std::size_t> all;
        for (std::size_t a = n; a-- > 0;) all.push_back(a); // pop order = ascending
        go(all);
        chosen = best;
        std::sort(chosen.begin(), chosen.end());
    }
    for (std::size_t a : chosen) rep.points.push_back(pts[a]);
    rep.separated_count = chosen.size();
    rep.witness_exponent =
        dim == 0 ? 0.0 : std::log2(static_cast<double>(rep.separated_count)) / dim;
    return rep;
}

PipelineReport entropy_witness_pipeline(const ClopenSet& u0, const ClopenSet& u1,
                                        const ClopenSet& v0, const ClopenSet& v1,
                                        const std::vector<int>& j_indices, int m,
                                        std::map<std::vector<std::size_t>, DiscreteMeasure> witnesses,
                                        const Rat& eta, const Rat& eps) {
    if (!is_standard_cover(u0, u1))
        throw std::invalid_argument("pipeline needs a standard cover");
    if (v0.is_empty() || v1.is_empty())
        throw std::invalid_argument("witness targets must be nonempty");
    if (!v0.subset_of(u0.difference(u1)))
        throw std::invalid_argument("V_0 must avoid the closure of U_1 inside U_0");
    if (!v1.subset_of(u1.difference(u0)))
        throw std::invalid_argument("V_1 must avoid the closure of U_0 inside U_1");
    if (m < 1) throw std::invalid_argument("depth must be positive");
    for (std::size_t p = 0; p < j_indices.size(); ++p) {
        if (j_indices[p] < 0 || j_indices[p] >= m)
            throw std::invalid_argument("time index outside [0, m)");
        if (p > 0 && j_indices[p] <= j_indices[p - 1])
            throw std::invalid_argument("time indices must increase");
    }

    // Auto-construct Dirac witnesses from pattern words when none given.
    if (witnesses.empty()) {
        std::vector<ClopenSet> targets{v0, v1};
        std::vector<std::size_t> sigma(j_indices.size(), 0);
        do {
            auto x = pattern_witness(targets, j_indices, sigma);
            if (!x) throw IndependenceError("witness pattern has empty intersection", sigma);
            witnesses.emplace(sigma, DiscreteMeasure::dirac(*x));
        } while (next_pattern(sigma, 2));
    }

    // Threshold verification, strict.
    {
        std::vector<std::size_t> sigma(j_indices.size(), 0);
        do {
            auto it = witnesses.find(sigma);
            if (it == witnesses.end()) throw std::invalid_argument("missing witness measure");
            for (std::size_t p = 0; p < sigma.size(); ++p) {
                const ClopenSet& target = sigma[p] ? v1 : v0;
                if (!(measure_of(pushforward(it->second, j_indices[p]), target) > eta)) {
                    std::ostringstream msg;
                    msg << "witness fails its threshold: sigma = ";
                    for (std::size_t v : sigma) msg << v;
                    msg << ", s = " << j_indices[p];
                    throw IndependenceError(msg.str(), sigma);
                }
            }
        } while (next_pattern(sigma, 2));
    }

    JoinCover join(u0, u1, m);
    auto sub = min_subcover(join);
    auto blocks = disjointify(join, sub.vectors);
    ZeroOneMatrix matrix = build_matrix(join, sub.vectors, blocks);

    // Sandwich inclusions at every witnessed time, exact.
    for (int s : j_indices) {
        ClopenSet ones = ClopenSet::empty(u0.space());
        ClopenSet zeros = ClopenSet::empty(u0.space());
        for (std::size_t i = 0; i < blocks.size(); ++i)
            (matrix.t[i][s] ? ones : zeros) = (matrix.t[i][s] ? ones : zeros).unite(blocks[i]);
        if (!v1.preimage(s).subset_of(ones) || !ones.subset_of(u1.preimage(s)))
            throw std::logic_error("sandwich inclusion failed on the 1-side");
        if (!v0.preimage(s).subset_of(zeros) || !zeros.subset_of(u0.preimage(s)))
            throw std::logic_error("sandwich inclusion failed on the 0-side");
    }

    // phi-images of the witness profiles.
    std::vector<std::vector<Rat>> images;
    {
        std::vector<std::size_t> sigma(j_indices.size(), 0);
        do {
            images.push_back(phi_apply(matrix, measure_profile(witnesses.at(sigma), blocks)));
        } while (next_pattern(sigma, 2));
    }
    SeparationGuards sg;
    SeparationMode mode =
        images.size() <= sg.max_points_exact ? SeparationMode::exact : SeparationMode::greedy;
    auto sep = separation_count(images, eps, mode, sg);

    PipelineReport rep;
    rep.m = m;
    rep.j_size = j_indices.size();
    rep.k_m = sub.size;
    rep.separated_count = sep.separated_count;
    rep.witness_exponent = sep.witness_exponent;
    rep.log2_km_over_m = std::log2(static_cast<double>(sub.size)) / m;
    rep.all_images_separated = sep.separated_count == images.size();
    rep.bound_consistency = rep.log2_km_over_m >= rep.witness_exponent - 1e-12;
    rep.matrix = std::move(matrix);
    rep.subcover = sub.vectors;
    return rep;
}

namespace {

Int needed_count(const Rat& eta, unsigned t) {
    Rat scaled = Rat(eta * t);
    return numerator(scaled) / denominator(scaled) + 1; // floor + 1, eta > 0
}

/// Does M_t meet the threshold set? Counts c_j = floor(t eta_j) + 1 atoms
/// per part must fit within t (parts are disjoint, so the count condition
/// is exact feasibility).
bool empirical_level_feasible(const WNeighborhood& w, unsigned t) {
    Rat total(0);
    for (const auto& [part, eta] : w.parts()) total += Rat(needed_count(eta, t));
    return total <= t;
}

unsigned least_empirical_level(const WNeighborhood& w, unsigned budget) {
    for (unsigned t = 1; t <= budget; ++t)
        if (empirical_level_feasible(w, t)) return t;
    throw std::runtime_error("empirical witness search budget exceeded");
}

/// An empirical witness in W at level t, plus the per-coordinate box list
/// (the part containing each atom, or X for filler atoms).
std::pair<DiscreteMeasure, std::vector<ClopenSet>> witness_at_level(const WNeighborhood& w,
                                                                    unsigned t) {
    std::vector<std::pair<Point, Rat>> atoms;
    std::vector<ClopenSet> boxes;
    unsigned used = 0;
    for (const auto& [part, eta] : w.parts()) {
        unsigned count = static_cast<unsigned>(needed_count(eta, t));
        atoms.emplace_back(some_point(part), Rat(Rat(count) / t));
        for (unsigned i = 0; i < count; ++i) boxes.push_back(part);
        used += count;
    }
    if (used > t) throw std::runtime_error("threshold set misses the empirical lattice");
    if (used < t) {
        atoms.emplace_back(least_point(w.space()), Rat(Rat(t - used) / t));
        for (unsigned i = used; i < t; ++i) boxes.push_back(ClopenSet::full(w.space()));
    }
    DiscreteMeasure mu(std::move(atoms));
    if (!w_contains(w, mu)) throw std::logic_error("constructed witness misses its set");
    return {mu, boxes};
}

} // namespace

ProductLift lift_open_to_product(const WNeighborhood& w0, const WNeighborhood& w1, unsigned n,
                                 unsigned budget) {
    if (w0.space() != w1.space())
        throw std::invalid_argument("threshold sets on different subshifts");
    unsigned t0, t1, m;
    if (n > 0) {
        t0 = t1 = m = n;
        // feasibility at exactly n is required ("m = n when n is finite")
        if (!empirical_level_feasible(w0, n) || !empirical_level_feasible(w1, n))
            throw std::runtime_error("threshold set misses M_n");
    } else {
        t0 = least_empirical_level(w0, budget);
        t1 = least_empirical_level(w1, budget);
        m = t0 * t1;
    }

    ProductLift lift;
    lift.m = m;
    auto [mu0, boxes0] = witness_at_level(w0, t0);
    auto [mu1, boxes1] = witness_at_level(w1, t1);
    lift.witnesses.push_back(mu0);
    lift.witnesses.push_back(mu1);
    // replicate each level-t box list m/t times
    for (unsigned rep = 0; rep < m / t0; ++rep)
        for (const auto& b : boxes0) lift.boxes[0].push_back(b);
    for (unsigned rep = 0; rep < m / t1; ++rep)
        for (const auto& b : boxes1) lift.boxes[1].push_back(b);
    return lift;
}

} // namespace entropylab
