#ifndef ENTROPYLAB_INDEPENDENCE_HPP
#define ENTROPYLAB_INDEPENDENCE_HPP

#include "entropylab/measures.hpp"
#include "entropylab/shiftspace.hpp"

#include <map>
#include <stdexcept>
#include <optional>
#include <vector>

namespace entropylab {

/// Guard on full-pattern enumeration: k^|I| and the word search size.
struct IndependenceGuards {
    std::size_t max_patterns = std::size_t(1) << 20;
};

/// Independence failure carrying the violating pattern.
struct IndependenceError : std::runtime_error {
    IndependenceError(const std::string& what, std::vector<std::size_t> s);
    std::vector<std::size_t> sigma;
};

/// Is the intersection over j in I of T^{-j}(A_{sigma(j)}) nonempty?
/// sigma[p] indexes `sets` for the p-th element of the sorted index list.
bool pattern_nonempty(const std::vector<ClopenSet>& sets, const std::vector<int>& indices,
                      const std::vector<std::size_t>& sigma);

/// A point of the intersection, when nonempty. `variant` rotates the
/// branching order so that different variants tend to produce distinct
/// witnesses.
std::optional<Point> pattern_witness(const std::vector<ClopenSet>& sets,
                                     const std::vector<int>& indices,
                                     const std::vector<std::size_t>& sigma,
                                     unsigned variant = 0);

struct VerifyResult {
    bool ok = true;
    std::vector<std::size_t> counterexample; // violating sigma when !ok
};

/// I is an independence set for (A_0..A_{k-1}) iff every full pattern
/// sigma on I has nonempty intersection; restrictions to subsets J follow
/// (dropping constraints only enlarges the intersection).
VerifyResult verify_independence(const std::vector<ClopenSet>& sets,
                                 const std::vector<int>& indices,
                                 const IndependenceGuards& guards = {});

struct DensityResult {
    std::vector<int> indices; // lexicographically first maximum-cardinality I
    Rat density;              // |I| / horizon
};

/// Maximum-cardinality independence set I within [0, horizon), by
/// branch-and-bound using downward closure.
DensityResult max_independence_density(const std::vector<ClopenSet>& sets, int horizon,
                                       const IndependenceGuards& guards = {});

/// Coordinatewise independence check for the m-fold product power: true
/// iff every coordinate's pair is independent over I.
bool product_power_check(const Subshift& space, int m,
                         const std::vector<std::vector<ClopenSet>>& coordinate_sets,
                         const std::vector<int>& indices,
                         const IndependenceGuards& guards = {});

/// {mu in M_n : mu(U) > eta}; n = 0 marks M(X) (no empirical restriction).
struct MeasureOpen {
    ClopenSet set;
    Rat eta;
    unsigned n = 0;
};

bool measure_open_contains(const MeasureOpen& open, const DiscreteMeasure& mu);

enum class CertLevel { base, measure };

/// An independence certificate: the tuple of sets (base level: clopen;
/// measure level: threshold opens), the index list, the horizon, and one
/// verified witness per full pattern sigma.
struct IndependenceCertificate {
    CertLevel level = CertLevel::base;
    std::vector<ClopenSet> base_sets;
    std::vector<MeasureOpen> measure_opens;
    std::vector<int> indices;
    int horizon = 0;
    std::map<std::vector<std::size_t>, Point> base_witnesses;
    std::map<std::vector<std::size_t>, DiscreteMeasure> measure_witnesses;
};

/// Every pattern has a witness and every witness lands in the required
/// set at every time in I (pushforward for the measure level).
bool verify_certificate(const IndependenceCertificate& cert);

/// Lifts a base independence set for (U0, U1) to the measure level
/// {mu in M_n : mu(U_k) > (n-1)/n}, with empirical witnesses
/// R_m(x_1..x_m) built from m product coordinates. Requires m = n so
/// that witnesses land in M_n.
/// Throws (carrying the violating sigma) when product independence fails.
IndependenceCertificate lift_base_to_measure(const std::vector<int>& indices,
                                             const ClopenSet& u0, const ClopenSet& u1,
                                             unsigned n, unsigned m,
                                             const IndependenceGuards& guards = {});

/// The finite-n reduction back to base level: an empirical measure on at
/// most n points with mass above (n-1)/n in U forces every atom inside U,
/// so each witness atom is a base witness. Verified exactly; throws with
/// the offending (sigma, time, atom) on tampered input.
IndependenceCertificate reduce_measure_to_base_finite_n(const IndependenceCertificate& cert);

} // namespace entropylab

#endif
