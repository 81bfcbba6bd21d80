#ifndef ENTROPYLAB_COVERS_HPP
#define ENTROPYLAB_COVERS_HPP

#include "entropylab/shiftspace.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace entropylab {

/// True iff {U0, U1} is a standard cover: the union is X and neither
/// element is dense (for clopen sets, neither equals X).
bool is_standard_cover(const ClopenSet& u0, const ClopenSet& u1);

/// The join U v T^-1 U v ... v T^-(n-1) U of a two-element cover, with
/// elements indexed by choice vectors t in {0,1}^depth (bit j of the
/// vector selects U_0 or U_1 at time j). Elements live on the window
/// depth - 1 + L.
class JoinCover {
public:
    JoinCover(ClopenSet u0, ClopenSet u1, int depth);

    const ClopenSet& u0() const { return u0_; }
    const ClopenSet& u1() const { return u1_; }
    int depth() const { return depth_; }
    /// Window of the join elements and of the word universe.
    int universe_window() const { return depth_ + u0_.window() - 1; }

    /// The join element E_t as a clopen set.
    ClopenSet element(std::uint32_t t) const;

    /// Does the element E_t contain the cylinder of word w (|w| = universe
    /// window)?
    bool element_covers_word(std::uint32_t t, const std::string& w) const;

private:
    ClopenSet u0_, u1_; // expanded to a common window
    int depth_;
};

struct SetCoverGuards {
    std::size_t max_universe = std::size_t(1) << 20;
    std::size_t max_vectors = std::size_t(1) << 14;
};

struct SubcoverResult {
    std::size_t size = 0;
    std::vector<std::uint32_t> vectors; // lexicographically first optimum
};

/// Exact minimum-cardinality subcover of the join, by forced-vector
/// reduction plus branch-and-bound with a greedy upper bound. Throws
/// when the guards are exceeded.
SubcoverResult min_subcover(const JoinCover& join, const SetCoverGuards& guards = {});

/// Greedy subcover: an upper bound on the minimum, always available.
SubcoverResult greedy_subcover(const JoinCover& join, const SetCoverGuards& guards = {});

/// B_i = A_i \ (A_1 u ... u A_{i-1}) for the listed subcover elements.
/// Verifies that the vectors cover X and that every block is nonempty.
std::vector<ClopenSet> disjointify(const JoinCover& join,
                                   const std::vector<std::uint32_t>& subcover);

struct EntropyProfileRow {
    int n = 0;
    Int subcover_size;  // N_n
    double log2_over_n = 0.0;
};

struct EntropyProfile {
    std::vector<EntropyProfileRow> rows;
    /// min over computed n of (1/n) log2 N_n; an upper bound on the limit
    /// by subadditivity (Fekete).
    double fekete_estimate = 0.0;
    /// (1/n) log2 N_n at the largest computed n.
    double last_value = 0.0;
};

/// Per-n subcover sizes for U = {U0, U1}; exact when exact=true, greedy
/// upper bounds otherwise.
EntropyProfile cover_entropy_profile(const ClopenSet& u0, const ClopenSet& u1,
                                     int n_max, bool exact = true,
                                     const SetCoverGuards& guards = {});

} // namespace entropylab

#endif
