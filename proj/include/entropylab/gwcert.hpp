#ifndef ENTROPYLAB_GWCERT_HPP
#define ENTROPYLAB_GWCERT_HPP

#include "entropylab/covers.hpp"
#include "entropylab/independence.hpp"
#include "entropylab/measures.hpp"

#include <array>
#include <map>
#include <vector>

namespace entropylab {

/// Row i records the block inclusion B_i subset of the intersection over
/// j of T^{-j}(U_{t[i][j]}).
struct ZeroOneMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<int>> t;
};

/// Builds the block/time matrix for a disjointified subcover. Entries are
/// forced by the inclusions; when a block fits both cover elements at some
/// time, the subcover's own choice bit is used (one reproducible valid
/// assignment). The inclusion of every row is verified exactly.
ZeroOneMatrix build_matrix(const JoinCover& join, const std::vector<std::uint32_t>& subcover,
                           const std::vector<ClopenSet>& blocks);

/// phi(r) = r M, exact; asserts the contraction max-norm(phi(r)) <= l1-norm(r).
std::vector<Rat> phi_apply(const ZeroOneMatrix& m, const std::vector<Rat>& r);

/// (mu(B_1), ..., mu(B_k)) for a partition into blocks; asserts the result
/// is a probability vector.
std::vector<Rat> measure_profile(const DiscreteMeasure& mu, const std::vector<ClopenSet>& blocks);

enum class SeparationMode { exact, greedy };

struct SeparationGuards {
    std::size_t max_points_exact = std::size_t(1) << 12;
};

struct SeparationReport {
    std::vector<std::vector<Rat>> points; // a pairwise separated subset
    Rat eps;
    std::size_t separated_count = 0;
    std::size_t pairs_checked = 0;
    double witness_exponent = 0.0; // log2(separated_count) / dimension
};

/// Size of a maximum (exact mode) or maximal greedy (greedy mode) subset
/// of points at pairwise max-coordinate distance >= eps.
SeparationReport separation_count(const std::vector<std::vector<Rat>>& points, const Rat& eps,
                                  SeparationMode mode = SeparationMode::exact,
                                  const SeparationGuards& guards = {});

struct PipelineReport {
    int m = 0;
    std::size_t j_size = 0;
    std::size_t k_m = 0; // minimal subcover size at depth m
    std::size_t separated_count = 0;
    double witness_exponent = 0.0;  // |J| / m when all images separate
    double log2_km_over_m = 0.0;
    bool all_images_separated = false;
    bool bound_consistency = false; // log2(k_m)/m >= log2(separated)/m
    ZeroOneMatrix matrix;
    std::vector<std::uint32_t> subcover;
};

/// End-to-end entropy-witness run: verifies the witness thresholds
/// (mu_sigma at time J[p] puts mass > eta on V_{sigma[p]}), builds the
/// minimal subcover, blocks and matrix at depth m, verifies the sandwich
/// T^{-s}(V_1) in union{B_i : t_{i,s}=1} in T^{-s}(U_1) (and the V_0/0-bit
/// mirror) for every s in J, and counts eps-separated phi-images over all
/// 2^|J| patterns. Witnesses may be omitted: Dirac witnesses are then
/// auto-built from the lexicographically least pattern words.
PipelineReport entropy_witness_pipeline(
    const ClopenSet& u0, const ClopenSet& u1, const ClopenSet& v0, const ClopenSet& v1,
    const std::vector<int>& j_indices, int m,
    std::map<std::vector<std::size_t>, DiscreteMeasure> witnesses = {},
    const Rat& eta = Rat(9) / 10, const Rat& eps = Rat(1) / 2);

struct ProductLift {
    unsigned m = 0;
    /// boxes[k][i]: clopen box for coordinate i of the k-th threshold set;
    /// any tuple with y_i in boxes[k][i] has r_m(y) inside W_k (and M_m).
    std::array<std::vector<ClopenSet>, 2> boxes;
    /// Witness empirical measures found in W_k during construction.
    std::vector<DiscreteMeasure> witnesses; // size 2
};

/// Open-set lifting to an m-fold product: finds empirical witnesses in
/// W_k, takes m = n when n is finite, m = t_0 t_1 with replicated boxes
/// when n = 0 (the unrestricted-measure marker), and returns per-
/// coordinate boxes U_{k,i} (the part containing the witness atom, or X).
ProductLift lift_open_to_product(const WNeighborhood& w0, const WNeighborhood& w1, unsigned n,
                                 unsigned budget = 64);

} // namespace entropylab

#endif
