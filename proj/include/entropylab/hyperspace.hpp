#ifndef ENTROPYLAB_HYPERSPACE_HPP
#define ENTROPYLAB_HYPERSPACE_HPP

#include "entropylab/shiftspace.hpp"

#include <vector>

namespace entropylab {

/// A nonempty finite closed subset of X: an element of the hyperspace K(X).
class FiniteClosedSet {
public:
    explicit FiniteClosedSet(std::vector<Point> points);

    const std::vector<Point>& points() const { return points_; }
    const Subshift& space() const { return points_.front().space(); }
    std::size_t size() const { return points_.size(); }

    bool operator==(const FiniteClosedSet& other) const {
        return points_ == other.points_;
    }

private:
    std::vector<Point> points_; // sorted, deduplicated
};

/// Hausdorff distance max(max_x d(x,K2), max_y d(y,K1)); equals the
/// infimum over strict delta-neighborhood radii (the inf itself is not
/// attained since distance values are the discrete set {0} U {2^-k}).
Rat hausdorff_distance(const FiniteClosedSet& k1, const FiniteClosedSet& k2);

/// The induced map on K(X): elementwise shift, deduplicated.
FiniteClosedSet induce_hyper(const FiniteClosedSet& k);

/// min_{a in K} d(x, a)
Rat distance_to_set(const Point& x, const FiniteClosedSet& k);

} // namespace entropylab

#endif
