#include "entropylab/measures.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace entropylab {

DiscreteMeasure::DiscreteMeasure(std::vector<std::pair<Point, Rat>> atoms) {
    if (atoms.empty()) throw std::invalid_argument("measure needs at least one atom");
    for (const auto& [p, m] : atoms) {
        if (p.space() != atoms.front().first.space())
            throw std::invalid_argument("atoms from different subshifts");
        if (m <= 0) throw std::invalid_argument("atom masses must be positive");
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [p, m] : atoms) {
        if (!atoms_.empty() && atoms_.back().first == p)
            atoms_.back().second += m;
        else
            atoms_.emplace_back(p, m);
    }
    Rat total(0);
    for (const auto& [p, m] : atoms_) total += m;
    if (total != 1) throw std::invalid_argument("masses must sum to 1, got " + rat_to_string(total));
}

DiscreteMeasure DiscreteMeasure::dirac(Point x) {
    return DiscreteMeasure({{std::move(x), Rat(1)}});
}

Rat measure_of(const DiscreteMeasure& mu, const ClopenSet& a) {
    if (mu.space() != a.space())
        throw std::invalid_argument("measure and set from different subshifts");
    Rat total(0);
    for (const auto& [p, m] : mu.atoms())
        if (a.contains(p)) total += m;
    return total;
}

DiscreteMeasure pushforward(const DiscreteMeasure& mu) {
    std::vector<std::pair<Point, Rat>> atoms;
    atoms.reserve(mu.atoms().size());
    for (const auto& [p, m] : mu.atoms()) atoms.emplace_back(p.shifted(), m);
    return DiscreteMeasure(std::move(atoms));
}

DiscreteMeasure pushforward(const DiscreteMeasure& mu, std::size_t j) {
    DiscreteMeasure out = mu;
    for (std::size_t i = 0; i < j; ++i) out = pushforward(out);
    return out;
}

namespace {

constexpr std::size_t kSupportGuard = 16;

void require_same_space(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
    if (mu.space() != nu.space())
        throw std::invalid_argument("measures from different subshifts");
}

// One-sided Prohorov value via subsets of supp(mu). For fixed A the map
// delta -> nu(A^delta) is a step function with breakpoints at the distinct
// values d(y, A); on each interval the feasibility condition is linear.
Rat prohorov_one_sided(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
    const auto& mx = mu.atoms();
    const auto& ny = nu.atoms();
    if (mx.size() > kSupportGuard)
        throw std::runtime_error("prohorov_subset support guard exceeded");

    // Pairwise distances d(x_i, y_j).
    std::vector<std::vector<Rat>> dist(mx.size(), std::vector<Rat>(ny.size()));
    for (std::size_t i = 0; i < mx.size(); ++i)
        for (std::size_t j = 0; j < ny.size(); ++j)
            dist[i][j] = metric(mx[i].first, ny[j].first);

    Rat global(0);
    const std::size_t n = mx.size();
    for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
        Rat mu_a(0);
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t(1) << i)) mu_a += mx[i].second;

        // d(y_j, A) and the step function nu({d <= b}).
        std::vector<std::pair<Rat, Rat>> by_dist; // (distance, mass)
        for (std::size_t j = 0; j < ny.size(); ++j) {
            Rat dj(-1);
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (std::size_t(1) << i))
                    if (dj < 0 || dist[i][j] < dj) dj = dist[i][j];
            by_dist.emplace_back(dj, ny[j].second);
        }
        std::sort(by_dist.begin(), by_dist.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });

        Rat best(-1);
        Rat cum(0);
        // Breakpoint b = 0 first (nu of the closed 0-neighborhood), then
        // each distinct distance value.
        std::size_t j = 0;
        auto consider = [&](const Rat& b, const Rat& nu_leq) {
            Rat cand = std::max(b, Rat(mu_a - nu_leq));
            if (best < 0 || cand < best) best = cand;
        };
        while (j < by_dist.size() && by_dist[j].first == 0) {
            cum += by_dist[j].second;
            ++j;
        }
        consider(Rat(0), cum);
        while (j < by_dist.size()) {
            Rat b = by_dist[j].first;
            while (j < by_dist.size() && by_dist[j].first == b) {
                cum += by_dist[j].second;
                ++j;
            }
            consider(b, cum);
        }
        if (best > global) global = best;
    }
    return global;
}

} // namespace

Rat prohorov_subset(const DiscreteMeasure& mu, const DiscreteMeasure& nu, bool symmetric) {
    require_same_space(mu, nu);
    Rat d = prohorov_one_sided(mu, nu);
    if (symmetric) d = std::max(d, prohorov_one_sided(nu, mu));
    return d;
}

namespace {

// Max flow with exact big-integer capacities (Edmonds-Karp); the graphs
// here have at most ~34 nodes.
struct FlowNet {
    struct Edge { int to; Int cap; int rev; };
    std::vector<std::vector<Edge>> g;

    explicit FlowNet(int n) : g(n) {}

    void add_edge(int u, int v, Int cap) {
        g[u].push_back({v, std::move(cap), static_cast<int>(g[v].size())});
        g[v].push_back({u, Int(0), static_cast<int>(g[u].size()) - 1});
    }

    Int max_flow(int s, int t) {
        Int flow(0);
        for (;;) {
            std::vector<int> prev_node(g.size(), -1), prev_edge(g.size(), -1);
            std::vector<int> queue{s};
            prev_node[s] = s;
            for (std::size_t qi = 0; qi < queue.size() && prev_node[t] < 0; ++qi) {
                int u = queue[qi];
                for (std::size_t e = 0; e < g[u].size(); ++e) {
                    const Edge& ed = g[u][e];
                    if (ed.cap > 0 && prev_node[ed.to] < 0) {
                        prev_node[ed.to] = u;
                        prev_edge[ed.to] = static_cast<int>(e);
                        queue.push_back(ed.to);
                    }
                }
            }
            if (prev_node[t] < 0) return flow;
            Int aug(-1);
            for (int v = t; v != s; v = prev_node[v]) {
                const Edge& ed = g[prev_node[v]][prev_edge[v]];
                if (aug < 0 || ed.cap < aug) aug = ed.cap;
            }
            for (int v = t; v != s; v = prev_node[v]) {
                Edge& ed = g[prev_node[v]][prev_edge[v]];
                ed.cap -= aug;
                g[v][ed.rev].cap += aug;
            }
            flow += aug;
        }
    }
};

} // namespace

Rat prohorov_flow(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
    require_same_space(mu, nu);
    const auto& mx = mu.atoms();
    const auto& ny = nu.atoms();

    Int scale(1);
    for (const auto& [p, m] : mx) scale = boost::multiprecision::lcm(scale, denominator(m));
    for (const auto& [p, m] : ny) scale = boost::multiprecision::lcm(scale, denominator(m));

    std::vector<std::vector<Rat>> dist(mx.size(), std::vector<Rat>(ny.size()));
    std::vector<Rat> breakpoints{Rat(0)};
    for (std::size_t i = 0; i < mx.size(); ++i)
        for (std::size_t j = 0; j < ny.size(); ++j) {
            dist[i][j] = metric(mx[i].first, ny[j].first);
            breakpoints.push_back(dist[i][j]);
        }
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

    const int s = 0, t = 1;
    Rat best(-1);
    for (const Rat& b : breakpoints) {
        FlowNet net(2 + static_cast<int>(mx.size() + ny.size()));
        for (std::size_t i = 0; i < mx.size(); ++i)
            net.add_edge(s, 2 + static_cast<int>(i),
                         Int(numerator(mx[i].second) * (scale / denominator(mx[i].second))));
        for (std::size_t j = 0; j < ny.size(); ++j)
            net.add_edge(2 + static_cast<int>(mx.size() + j), t,
                         Int(numerator(ny[j].second) * (scale / denominator(ny[j].second))));
        for (std::size_t i = 0; i < mx.size(); ++i)
            for (std::size_t j = 0; j < ny.size(); ++j)
                if (dist[i][j] <= b)
                    net.add_edge(2 + static_cast<int>(i),
                                 2 + static_cast<int>(mx.size() + j), scale);
        Rat f(net.max_flow(s, t), scale);
        Rat cand = std::max(b, Rat(1 - f));
        if (best < 0 || cand < best) best = cand;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Neighborhoods

WNeighborhood::WNeighborhood(std::vector<std::pair<ClopenSet, Rat>> parts)
    : parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("W-neighborhood needs at least one part");
    Rat total(0);
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        const auto& [u, eta] = parts_[i];
        if (u.space() != parts_.front().first.space())
            throw std::invalid_argument("parts from different subshifts");
        if (u.is_empty()) throw std::invalid_argument("W-neighborhood parts must be nonempty");
        if (eta <= 0) throw std::invalid_argument("thresholds must be positive");
        total += eta;
        for (std::size_t j = 0; j < i; ++j)
            if (!u.disjoint_with(parts_[j].first))
                throw std::invalid_argument("W-neighborhood parts must be disjoint");
    }
    if (total >= 1)
        throw std::invalid_argument("thresholds must sum below 1");
}

bool w_contains(const WNeighborhood& w, const DiscreteMeasure& nu) {
    for (const auto& [u, eta] : w.parts())
        if (!(measure_of(nu, u) > eta)) return false;
    return true;
}

Rat w_robustness_radius(const WNeighborhood& w, const DiscreteMeasure& mu) {
    if (!w_contains(w, mu))
        throw std::invalid_argument("w_robustness_radius requires mu in W");
    Rat delta(-1);
    for (const auto& [u, eta] : w.parts()) {
        // Atoms of mu inside U play the role of the compact core C.
        std::vector<Point> core;
        for (const auto& [p, m] : mu.atoms())
            if (u.contains(p)) core.push_back(p);
        // gap: largest 2^-k whose closed neighborhood of the core stays in U.
        int k = 0;
        for (;; ++k) {
            bool inside = true;
            for (const auto& p : core) {
                ClopenSet ball = k == 0 ? ClopenSet::full(u.space())
                                        : ClopenSet::cylinder(u.space(), p.prefix(k));
                if (!ball.subset_of(u)) { inside = false; break; }
            }
            if (inside) break;
        }
        Rat gap = dyadic(static_cast<unsigned>(k));
        Rat slack = measure_of(mu, u) - eta;
        Rat local = std::min(gap, slack);
        if (delta < 0 || local < delta) delta = local;
    }
    return delta;
}

WNeighborhood basis_refine(const DiscreteMeasure& mu, const Rat& eps) {
    if (eps <= 0) throw std::invalid_argument("eps must be positive");
    if (eps > 1) throw std::invalid_argument("eps must be at most 1");
    Rat delta = Rat(3) * eps / 4;
    unsigned L = 1;
    while (dyadic(L) >= delta) ++L;

    // Cylinder parts at window L charged by mu; diam <= 2^-L < delta.
    std::map<std::string, Rat> mass;
    for (const auto& [p, m] : mu.atoms()) mass[p.prefix(L)] += m;
    const Rat k(static_cast<unsigned long long>(mass.size()));
    std::vector<std::pair<ClopenSet, Rat>> parts;
    for (const auto& [word, m] : mass) {
        Rat margin = std::min(Rat(delta / (2 * k)), m) / 2;
        parts.emplace_back(ClopenSet::cylinder(mu.space(), word), m - margin);
    }
    return WNeighborhood(std::move(parts));
}

bool in_m_n(const DiscreteMeasure& mu, unsigned n) {
    if (n == 0) throw std::invalid_argument("n must be positive");
    for (const auto& [p, m] : mu.atoms())
        if (denominator(Rat(m * n)) != 1) return false;
    return true;
}

DiscreteMeasure empirical_round(const DiscreteMeasure& mu, unsigned n) {
    if (n < mu.support_size())
        throw std::invalid_argument("empirical_round requires n >= support size");
    struct Row { std::size_t idx; Int base; Rat remainder; };
    std::vector<Row> rows;
    Int assigned(0);
    for (std::size_t i = 0; i < mu.atoms().size(); ++i) {
        Rat units = mu.atoms()[i].second * n;
        Int base = numerator(units) / denominator(units);
        rows.push_back({i, base, units - Rat(base)});
        assigned += base;
    }
    Int leftover = Int(n) - assigned;
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.remainder > b.remainder; });
    for (auto& r : rows) {
        if (leftover == 0) break;
        r.base += 1;
        leftover -= 1;
    }
    std::vector<std::pair<Point, Rat>> atoms;
    for (const auto& r : rows)
        if (r.base > 0)
            atoms.emplace_back(mu.atoms()[r.idx].first, Rat(r.base, Int(n)));
    return DiscreteMeasure(std::move(atoms));
}

DiscreteMeasure r_m(const std::vector<Point>& points) {
    if (points.empty()) throw std::invalid_argument("r_m needs at least one point");
    std::vector<std::pair<Point, Rat>> atoms;
    Rat w(1, static_cast<unsigned long long>(points.size()));
    for (const auto& p : points) atoms.emplace_back(p, w);
    return DiscreteMeasure(std::move(atoms));
}

LocallyConstantFn::LocallyConstantFn(Subshift space, int window,
                                     std::map<std::string, Rat> values)
    : space_(std::move(space)), window_(window), values_(std::move(values)) {
    if (window_ < 1) throw std::invalid_argument("window must be positive");
    for (const auto& w : space_.words(window_))
        if (!values_.count(w))
            throw std::invalid_argument("test function missing value for word " + w);
}

Rat LocallyConstantFn::integrate(const DiscreteMeasure& nu) const {
    if (nu.space() != space_)
        throw std::invalid_argument("measure from a different subshift");
    Rat total(0);
    for (const auto& [p, m] : nu.atoms())
        total += values_.at(p.prefix(static_cast<std::size_t>(window_))) * m;
    return total;
}

VNeighborhood::VNeighborhood(DiscreteMeasure center, std::vector<LocallyConstantFn> tests, Rat eps)
    : center_(std::move(center)), tests_(std::move(tests)), eps_(std::move(eps)) {
    if (eps_ <= 0) throw std::invalid_argument("eps must be positive");
}

bool v_contains(const VNeighborhood& v, const DiscreteMeasure& nu) {
    for (const auto& f : v.tests())
        if (!(rat_abs(f.integrate(nu) - f.integrate(v.center())) < v.eps()))
            return false;
    return true;
}

} // namespace entropylab
