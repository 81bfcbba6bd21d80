#ifndef ENTROPYLAB_MEASURES_HPP
#define ENTROPYLAB_MEASURES_HPP

#include "entropylab/shiftspace.hpp"

#include <map>
#include <utility>
#include <vector>

namespace entropylab {

/// A finitely-supported Borel probability measure with exact rational
/// masses. Atoms are kept sorted with distinct points; duplicate points
/// passed to the constructor are merged.
class DiscreteMeasure {
public:
    explicit DiscreteMeasure(std::vector<std::pair<Point, Rat>> atoms);
    static DiscreteMeasure dirac(Point x);

    const std::vector<std::pair<Point, Rat>>& atoms() const { return atoms_; }
    const Subshift& space() const { return atoms_.front().first.space(); }
    std::size_t support_size() const { return atoms_.size(); }

    bool operator==(const DiscreteMeasure& other) const {
        return atoms_ == other.atoms_;
    }

private:
    std::vector<std::pair<Point, Rat>> atoms_;
};

/// mu(A), exact.
Rat measure_of(const DiscreteMeasure& mu, const ClopenSet& a);

/// The induced map on M(X): (T~ mu)(A) = mu(T^{-1} A).
DiscreteMeasure pushforward(const DiscreteMeasure& mu);
DiscreteMeasure pushforward(const DiscreteMeasure& mu, std::size_t j);

/// Prohorov distance by the subset/breakpoint algorithm. With
/// symmetric=false this is the one-sided form inf{d : mu(A) <= nu(A^d)+d};
/// with symmetric=true both directions are enforced. The returned rational
/// is the exact infimum (not attained when it sits on a neighborhood
/// boundary). Support size is guarded at 16 per side.
Rat prohorov_subset(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                    bool symmetric);

/// Same value by coupling feasibility: delta is feasible iff the max
/// bipartite flow over edges {d(x,y) <= b} reaches 1 - delta on each
/// breakpoint interval. Exact, agrees with prohorov_subset.
Rat prohorov_flow(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// W(U_1..U_k; eta_1..eta_k) = {nu : nu(U_i) > eta_i}, the weak* basis of
/// threshold neighborhoods. Parts are disjoint nonempty clopen sets with
/// positive thresholds summing below 1.
class WNeighborhood {
public:
    explicit WNeighborhood(std::vector<std::pair<ClopenSet, Rat>> parts);

    const std::vector<std::pair<ClopenSet, Rat>>& parts() const { return parts_; }
    const Subshift& space() const { return parts_.front().first.space(); }

private:
    std::vector<std::pair<ClopenSet, Rat>> parts_;
};

bool w_contains(const WNeighborhood& w, const DiscreteMeasure& nu);

/// A radius delta > 0 such that the Prohorov ball B(mu; delta) lies inside
/// W: min over parts of min(gap_i, slack_i), where gap_i is the largest
/// 2^-k whose closed neighborhood of mu's atoms inside U_i stays in U_i
/// and slack_i = mu(U_i) - eta_i. Requires w_contains(w, mu).
Rat w_robustness_radius(const WNeighborhood& w, const DiscreteMeasure& mu);

/// Constructs W with mu in W subset B(mu; eps): cylinder parts of diameter
/// below a chosen delta < eps, thresholds just under the part masses.
WNeighborhood basis_refine(const DiscreteMeasure& mu, const Rat& eps);

/// True iff all masses are multiples of 1/n (membership in M_n(X)).
bool in_m_n(const DiscreteMeasure& mu, unsigned n);

/// Largest-remainder rounding of masses to multiples of 1/n. Requires
/// n >= support size.
DiscreteMeasure empirical_round(const DiscreteMeasure& mu, unsigned n);

/// R_m(x_1..x_m) = (1/m) sum delta_{x_i}, duplicates merged.
DiscreteMeasure r_m(const std::vector<Point>& points);

/// A locally constant test function: value depends on the first `window`
/// symbols. The value map must be total on admissible words.
class LocallyConstantFn {
public:
    LocallyConstantFn(Subshift space, int window, std::map<std::string, Rat> values);

    Rat integrate(const DiscreteMeasure& nu) const;
    int window() const { return window_; }

private:
    Subshift space_;
    int window_;
    std::map<std::string, Rat> values_;
};

/// V(mu; f_1..f_k; eps): the classical weak* neighborhood with locally
/// constant test functions.
class VNeighborhood {
public:
    VNeighborhood(DiscreteMeasure center, std::vector<LocallyConstantFn> tests, Rat eps);

    const DiscreteMeasure& center() const { return center_; }
    const std::vector<LocallyConstantFn>& tests() const { return tests_; }
    const Rat& eps() const { return eps_; }

private:
    DiscreteMeasure center_;
    std::vector<LocallyConstantFn> tests_;
    Rat eps_;
};

bool v_contains(const VNeighborhood& v, const DiscreteMeasure& nu);

} // namespace entropylab

#endif
