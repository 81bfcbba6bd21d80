#include "entropylab/hyperspace.hpp"

#include <algorithm>
#include <stdexcept>

namespace entropylab {

FiniteClosedSet::FiniteClosedSet(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.empty())
        throw std::invalid_argument("finite closed set must be nonempty");
    for (const auto& p : points_)
        if (p.space() != points_.front().space())
            throw std::invalid_argument("points from different subshifts");
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

Rat distance_to_set(const Point& x, const FiniteClosedSet& k) {
    Rat best = metric(x, k.points().front());
    for (std::size_t i = 1; i < k.points().size(); ++i)
        best = std::min(best, metric(x, k.points()[i]));
    return best;
}

Rat hausdorff_distance(const FiniteClosedSet& k1, const FiniteClosedSet& k2) {
    if (k1.space() != k2.space())
        throw std::invalid_argument("hausdorff_distance requires a common subshift");
    Rat d(0);
    for (const auto& x : k1.points()) d = std::max(d, distance_to_set(x, k2));
    for (const auto& y : k2.points()) d = std::max(d, distance_to_set(y, k1));
    return d;
}

FiniteClosedSet induce_hyper(const FiniteClosedSet& k) {
    std::vector<Point> out;
    out.reserve(k.size());
    for (const auto& p : k.points()) out.push_back(p.shifted());
    return FiniteClosedSet(std::move(out));
}

} // namespace entropylab
