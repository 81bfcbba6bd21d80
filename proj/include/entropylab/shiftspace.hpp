#ifndef ENTROPYLAB_SHIFTSPACE_HPP
#define ENTROPYLAB_SHIFTSPACE_HPP

#include "entropylab/rational.hpp"

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace entropylab {

/// A subshift of finite type over the alphabet {'0', ..., '0'+k-1},
/// given by a finite set of forbidden words. The space X is the set of
/// one-sided infinite sequences containing no forbidden factor; the map T
/// is the left shift. Construction rejects empty subshifts and subshifts
/// on which the shift is not surjective.
class Subshift {
public:
    Subshift(int alphabet_size, std::vector<std::string> forbidden);

    int alphabet_size() const { return impl_->alphabet_size; }
    /// Max forbidden-word length minus 1 (0 when nothing is forbidden).
    int memory() const { return impl_->memory; }
    const std::vector<std::string>& forbidden() const { return impl_->forbidden; }

    char symbol(int i) const { return static_cast<char>('0' + i); }

    /// No forbidden factor.
    bool locally_admissible(std::string_view w) const;
    /// w is the prefix of some point of X (locally admissible with a live
    /// continuation).
    bool word_admissible(std::string_view w) const;

    /// All admissible words of length n, lexicographically sorted.
    /// Throws when the count would exceed the guard.
    std::vector<std::string> words(int n, std::size_t guard = std::size_t(1) << 20) const;

    /// Exact number of admissible words of length n.
    Int word_count(int n) const;

    /// Lexicographically least infinite admissible continuation of the
    /// admissible word w, returned as (extra_preperiod, period): the point
    /// is w + extra + period^inf.
    std::pair<std::string, std::string> least_tail(std::string_view w) const;

    /// Two subshifts denote the same space iff alphabet and canonical
    /// forbidden sets agree.
    bool operator==(const Subshift& other) const;
    bool operator!=(const Subshift& other) const { return !(*this == other); }

private:
    struct Impl {
        int alphabet_size = 0;
        int memory = 0;
        std::vector<std::string> forbidden;        // sorted, deduplicated
        std::vector<std::string> states;           // locally admissible words of length memory
        std::set<std::string> live;                // states with an infinite continuation
    };
    std::shared_ptr<const Impl> impl_;

    bool state_live(std::string_view s) const;
    friend class Point;
    friend class ClopenSet;
};

/// An eventually periodic point of a subshift, stored canonically
/// (primitive period, minimal preperiod) so that representation equality
/// coincides with equality of the denoted sequences.
class Point {
public:
    Point(Subshift space, std::string preperiod, std::string period);

    const Subshift& space() const { return space_; }
    const std::string& preperiod() const { return preperiod_; }
    const std::string& period() const { return period_; }

    char at(std::size_t i) const;
    std::string prefix(std::size_t n) const;

    /// The left shift T.
    Point shifted() const;
    Point shifted(std::size_t j) const;

    bool operator==(const Point& other) const;
    bool operator!=(const Point& other) const { return !(*this == other); }
    bool operator<(const Point& other) const;

    std::string to_string() const;

private:
    Subshift space_;
    std::string preperiod_;
    std::string period_;
};

/// d(x, y) = 0 if x = y, else 2^{-k} where k is the first index of
/// disagreement. Exact dyadic rational; an ultrametric.
Rat metric(const Point& x, const Point& y);

/// A clopen subset of a subshift: a union of cylinders over a uniform
/// window. Kept canonical (minimal window), so operator== decides equality
/// of the denoted subsets of X.
class ClopenSet {
public:
    /// Empty set (canonical window 1).
    static ClopenSet empty(Subshift space);
    /// The whole space X.
    static ClopenSet full(Subshift space);
    /// The cylinder [w] = {x : x starts with w}; w must be admissible.
    static ClopenSet cylinder(Subshift space, const std::string& w);
    /// Union of cylinders over window L. Rejects inadmissible words.
    static ClopenSet from_words(Subshift space, int window, std::set<std::string> words);

    const Subshift& space() const { return space_; }
    int window() const { return window_; }
    const std::set<std::string>& words() const { return words_; }

    bool is_empty() const { return words_.empty(); }
    bool is_full() const;
    /// Clopen sets are closed, so dense means equal to X.
    bool is_dense() const { return is_full(); }
    bool contains(const Point& x) const;

    /// Same set rewritten at window L >= window().
    ClopenSet expanded(int L) const;

    /// T^{-j}(A): words w of length j + window() with w[j..) in this set.
    ClopenSet preimage(int j) const;

    ClopenSet intersect(const ClopenSet& other) const;
    ClopenSet unite(const ClopenSet& other) const;
    ClopenSet difference(const ClopenSet& other) const;
    ClopenSet complement() const;

    bool disjoint_with(const ClopenSet& other) const;
    bool subset_of(const ClopenSet& other) const;

    bool operator==(const ClopenSet& other) const;
    bool operator!=(const ClopenSet& other) const { return !(*this == other); }

private:
    ClopenSet(Subshift space, int window, std::set<std::string> words);
    void canonicalize();

    Subshift space_;
    int window_ = 1;
    std::set<std::string> words_;
};

} // namespace entropylab

#endif
