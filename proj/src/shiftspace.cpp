#include "entropylab/shiftspace.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace entropylab {

namespace {

bool ends_with(std::string_view w, std::string_view suffix) {
    return w.size() >= suffix.size() &&
           w.substr(w.size() - suffix.size()) == suffix;
}

} // namespace

Subshift::Subshift(int alphabet_size, std::vector<std::string> forbidden) {
    if (alphabet_size < 2 || alphabet_size > 10)
        throw std::invalid_argument("alphabet_size must be in [2, 10]");
    auto impl = std::make_shared<Impl>();
    impl->alphabet_size = alphabet_size;

    std::sort(forbidden.begin(), forbidden.end());
    forbidden.erase(std::unique(forbidden.begin(), forbidden.end()), forbidden.end());
    int max_len = 0;
    for (const auto& f : forbidden) {
        if (f.empty()) throw std::invalid_argument("forbidden word must be nonempty");
        for (char c : f)
            if (c < '0' || c >= '0' + alphabet_size)
                throw std::invalid_argument("forbidden word uses symbol outside alphabet: " + f);
        max_len = std::max<int>(max_len, static_cast<int>(f.size()));
    }
    impl->forbidden = std::move(forbidden);
    impl->memory = max_len > 0 ? max_len - 1 : 0;

    // Enumerate locally admissible states of length `memory`.
    auto loc_adm = [&impl](std::string_view w) {
        for (const auto& f : impl->forbidden)
            if (w.size() >= f.size() && w.find(f) != std::string_view::npos) return false;
        return true;
    };
    std::vector<std::string> frontier{""};
    for (int len = 0; len < impl->memory; ++len) {
        std::vector<std::string> next;
        for (const auto& w : frontier)
            for (int a = 0; a < alphabet_size; ++a) {
                std::string v = w + static_cast<char>('0' + a);
                if (loc_adm(v)) next.push_back(std::move(v));
            }
        frontier = std::move(next);
        if (frontier.size() > (std::size_t(1) << 16))
            throw std::invalid_argument("subshift memory too large for state enumeration");
    }
    impl->states = frontier;

    // Live states: those with an infinite admissible continuation.
    auto allowed = [&impl](const std::string& s, int a) {
        std::string w = s + static_cast<char>('0' + a);
        for (const auto& f : impl->forbidden)
            if (ends_with(w, f)) return false;
        return true;
    };
    std::set<std::string> live(impl->states.begin(), impl->states.end());
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = live.begin(); it != live.end();) {
            const std::string& s = *it;
            bool has_out = false;
            for (int a = 0; a < alphabet_size && !has_out; ++a) {
                if (!allowed(s, a)) continue;
                std::string t = (s + static_cast<char>('0' + a))
                                    .substr(impl->memory > 0 ? 1 : 0);
                if (impl->memory == 0) t = "";
                if (live.count(t)) has_out = true;
            }
            if (!has_out) {
                it = live.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }
    impl->live = std::move(live);
    if (impl->live.empty())
        throw std::invalid_argument("empty subshift rejected");

    // Shift surjectivity: every admissible state must have a left extension.
    for (const auto& s : impl->live) {
        if (impl->memory == 0) break;
        bool ok = false;
        for (int a = 0; a < alphabet_size && !ok; ++a) {
            std::string w = static_cast<char>('0' + a) + s;
            if (loc_adm(w)) ok = true;
        }
        if (!ok)
            throw std::invalid_argument(
                "shift not surjective: state '" + s + "' has no left extension");
    }

    impl_ = std::move(impl);
}

bool Subshift::locally_admissible(std::string_view w) const {
    for (const auto& f : impl_->forbidden)
        if (w.size() >= f.size() && w.find(f) != std::string_view::npos) return false;
    return true;
}

bool Subshift::state_live(std::string_view s) const {
    return impl_->live.count(std::string(s)) > 0;
}

bool Subshift::word_admissible(std::string_view w) const {
    if (!locally_admissible(w)) return false;
    int m = impl_->memory;
    if (static_cast<int>(w.size()) >= m)
        return state_live(w.substr(w.size() - m));
    // Short word: search for an admissible completion to length `memory`.
    std::string cur(w);
    std::function<bool(std::string&)> go = [&](std::string& word) -> bool {
        if (static_cast<int>(word.size()) >= m)
            return state_live(std::string_view(word).substr(word.size() - m));
        for (int a = 0; a < impl_->alphabet_size; ++a) {
            word.push_back(static_cast<char>('0' + a));
            bool ok = true;
            for (const auto& f : impl_->forbidden)
                if (ends_with(word, f)) { ok = false; break; }
            if (ok && go(word)) { word.pop_back(); return true; }
            word.pop_back();
        }
        return false;
    };
    return go(cur);
}

std::vector<std::string> Subshift::words(int n, std::size_t guard) const {
    if (n < 0) throw std::invalid_argument("word length must be nonnegative");
    std::vector<std::string> out;
    std::string cur;
    std::function<void()> go = [&]() {
        if (static_cast<int>(cur.size()) == n) {
            if (word_admissible(cur)) {
                out.push_back(cur);
                if (out.size() > guard)
                    throw std::runtime_error("word enumeration guard exceeded");
            }
            return;
        }
        for (int a = 0; a < impl_->alphabet_size; ++a) {
            cur.push_back(static_cast<char>('0' + a));
            bool ok = true;
            for (const auto& f : impl_->forbidden)
                if (ends_with(cur, f)) { ok = false; break; }
            if (ok) go();
            cur.pop_back();
        }
    };
    go();
    return out;
}

Int Subshift::word_count(int n) const {
    if (n < 0) throw std::invalid_argument("word length must be nonnegative");
    int m = impl_->memory;
    if (n < m) return Int(words(n).size());
    // DP over the de Bruijn automaton; a word counts iff its final state is live.
    std::map<std::string, Int> g;
    for (const auto& s : impl_->states)
        g[s] = impl_->live.count(s) ? 1 : 0;
    for (int step = 0; step < n - m; ++step) {
        std::map<std::string, Int> h;
        for (const auto& s : impl_->states) {
            Int total = 0;
            for (int a = 0; a < impl_->alphabet_size; ++a) {
                std::string w = s + static_cast<char>('0' + a);
                bool ok = true;
                for (const auto& f : impl_->forbidden)
                    if (ends_with(w, f)) { ok = false; break; }
                if (!ok) continue;
                std::string t = m > 0 ? w.substr(1) : "";
                auto it = g.find(t);
                if (it != g.end()) total += it->second;
            }
            h[s] = std::move(total);
        }
        g = std::move(h);
    }
    Int total = 0;
    for (const auto& [s, c] : g) total += c;
    return total;
}

std::pair<std::string, std::string> Subshift::least_tail(std::string_view w) const {
    if (!word_admissible(w))
        throw std::invalid_argument("least_tail requires an admissible word");
    int m = impl_->memory;
    std::string extra;
    std::string state;
    if (static_cast<int>(w.size()) >= m) {
        state = std::string(w.substr(w.size() - m));
    } else {
        // Extend to length `memory` with the least admissible completion.
        std::string word(w);
        while (static_cast<int>(word.size()) < m) {
            bool found = false;
            for (int a = 0; a < impl_->alphabet_size && !found; ++a) {
                word.push_back(static_cast<char>('0' + a));
                if (word_admissible(word)) {
                    extra.push_back(word.back());
                    found = true;
                } else {
                    word.pop_back();
                }
            }
            if (!found) throw std::logic_error("admissible word lost its continuation");
        }
        state = word.substr(word.size() - m);
    }
    // Greedy least continuation; the state sequence is eventually periodic.
    std::map<std::string, std::size_t> seen;
    std::string emitted;
    std::string s = state;
    while (!seen.count(s)) {
        seen[s] = emitted.size();
        bool stepped = false;
        for (int a = 0; a < impl_->alphabet_size && !stepped; ++a) {
            std::string v = s + static_cast<char>('0' + a);
            bool ok = true;
            for (const auto& f : impl_->forbidden)
                if (ends_with(v, f)) { ok = false; break; }
            if (!ok) continue;
            std::string t = m > 0 ? v.substr(1) : "";
            if (!impl_->live.count(t)) continue;
            emitted.push_back(static_cast<char>('0' + a));
            s = t;
            stepped = true;
        }
        if (!stepped) throw std::logic_error("live state with no live successor");
    }
    std::size_t start = seen[s];
    std::string pre = extra + emitted.substr(0, start);
    std::string per = emitted.substr(start);
    return {pre, per};
}

bool Subshift::operator==(const Subshift& other) const {
    return impl_ == other.impl_ ||
           (impl_->alphabet_size == other.impl_->alphabet_size &&
            impl_->forbidden == other.impl_->forbidden);
}

// ---------------------------------------------------------------------------
// Point

namespace {

// Smallest p such that v is a power of its length-p prefix.
std::size_t primitive_root_length(const std::string& v) {
    for (std::size_t p = 1; p <= v.size(); ++p) {
        if (v.size() % p != 0) continue;
        bool ok = true;
        for (std::size_t i = p; i < v.size() && ok; ++i)
            if (v[i] != v[i - p]) ok = false;
        if (ok) return p;
    }
    return v.size();
}

} // namespace

Point::Point(Subshift space, std::string preperiod, std::string period)
    : space_(std::move(space)), preperiod_(std::move(preperiod)), period_(std::move(period)) {
    if (period_.empty()) throw std::invalid_argument("period must be nonempty");
    period_ = period_.substr(0, primitive_root_length(period_));
    // Absorb the preperiod tail into the period by rotation.
    while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
        preperiod_.pop_back();
        period_ = period_.back() + period_.substr(0, period_.size() - 1);
    }
    std::size_t need = preperiod_.size() + 2 * period_.size() + space_.memory() + 2;
    std::string expansion = preperiod_;
    while (expansion.size() < need) expansion += period_;
    if (!space_.locally_admissible(expansion))
        throw std::invalid_argument("point sequence is not admissible: " + to_string());
}

char Point::at(std::size_t i) const {
    if (i < preperiod_.size()) return preperiod_[i];
    return period_[(i - preperiod_.size()) % period_.size()];
}

std::string Point::prefix(std::size_t n) const {
    std::string out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
    return out;
}

Point Point::shifted() const {
    if (!preperiod_.empty())
        return Point(space_, preperiod_.substr(1), period_);
    return Point(space_, "", period_.substr(1) + period_[0]);
}

Point Point::shifted(std::size_t j) const {
    Point p = *this;
    for (std::size_t i = 0; i < j; ++i) p = p.shifted();
    return p;
}

bool Point::operator==(const Point& other) const {
    return space_ == other.space_ && preperiod_ == other.preperiod_ &&
           period_ == other.period_;
}

bool Point::operator<(const Point& other) const {
    // Lexicographic order of the denoted sequences.
    std::size_t bound = std::max(preperiod_.size(), other.preperiod_.size()) +
                        std::lcm(period_.size(), other.period_.size());
    for (std::size_t i = 0; i < bound; ++i) {
        char a = at(i), b = other.at(i);
        if (a != b) return a < b;
    }
    return false;
}

std::string Point::to_string() const {
    return preperiod_ + "(" + period_ + ")*";
}

Rat metric(const Point& x, const Point& y) {
    if (x.space() != y.space())
        throw std::invalid_argument("metric requires points of the same subshift");
    std::size_t bound = std::max(x.preperiod().size(), y.preperiod().size()) +
                        std::lcm(x.period().size(), y.period().size());
    for (std::size_t i = 0; i < bound; ++i)
        if (x.at(i) != y.at(i)) return dyadic(static_cast<unsigned>(i));
    return Rat(0);
}

// ---------------------------------------------------------------------------
// ClopenSet

ClopenSet::ClopenSet(Subshift space, int window, std::set<std::string> words)
    : space_(std::move(space)), window_(window), words_(std::move(words)) {
    canonicalize();
}

ClopenSet ClopenSet::empty(Subshift space) {
    return ClopenSet(std::move(space), 1, {});
}

ClopenSet ClopenSet::full(Subshift space) {
    auto w1 = space.words(1);
    return ClopenSet(std::move(space), 1, std::set<std::string>(w1.begin(), w1.end()));
}

ClopenSet ClopenSet::cylinder(Subshift space, const std::string& w) {
    if (w.empty()) return full(std::move(space));
    if (!space.word_admissible(w))
        throw std::invalid_argument("cylinder word not admissible: " + w);
    return ClopenSet(std::move(space), static_cast<int>(w.size()), {w});
}

ClopenSet ClopenSet::from_words(Subshift space, int window, std::set<std::string> words) {
    if (window < 1) throw std::invalid_argument("window must be positive");
    for (const auto& w : words) {
        if (static_cast<int>(w.size()) != window)
            throw std::invalid_argument("word length does not match window: " + w);
        if (!space.word_admissible(w))
            throw std::invalid_argument("inadmissible word in clopen set: " + w);
    }
    return ClopenSet(std::move(space), window, std::move(words));
}

void ClopenSet::canonicalize() {
    while (window_ > 1) {
        std::map<std::string, std::set<char>> listed;
        for (const auto& w : words_)
            listed[w.substr(0, w.size() - 1)].insert(w.back());
        bool reducible = true;
        for (const auto& [p, ext] : listed) {
            std::set<char> all;
            for (int a = 0; a < space_.alphabet_size(); ++a) {
                std::string v = p + static_cast<char>('0' + a);
                if (space_.word_admissible(v)) all.insert(v.back());
            }
            if (ext != all) { reducible = false; break; }
        }
        if (!reducible) break;
        std::set<std::string> reduced;
        for (const auto& [p, ext] : listed) reduced.insert(p);
        words_ = std::move(reduced);
        --window_;
    }
}

bool ClopenSet::is_full() const {
    auto all = space_.words(window_);
    return words_.size() == all.size();
}

bool ClopenSet::contains(const Point& x) const {
    if (x.space() != space_)
        throw std::invalid_argument("point from a different subshift");
    return words_.count(x.prefix(static_cast<std::size_t>(window_))) > 0;
}

ClopenSet ClopenSet::expanded(int L) const {
    if (L < window_) throw std::invalid_argument("cannot shrink window");
    std::set<std::string> cur = words_;
    for (int len = window_; len < L; ++len) {
        std::set<std::string> next;
        for (const auto& w : cur)
            for (int a = 0; a < space_.alphabet_size(); ++a) {
                std::string v = w + static_cast<char>('0' + a);
                if (space_.word_admissible(v)) next.insert(std::move(v));
            }
        cur = std::move(next);
    }
    ClopenSet out = *this;
    out.window_ = L;
    out.words_ = std::move(cur);
    // Not canonical by construction; callers use expanded() transiently.
    return out;
}

ClopenSet ClopenSet::preimage(int j) const {
    if (j < 0) throw std::invalid_argument("preimage exponent must be nonnegative");
    if (j == 0) return *this;
    int L = j + window_;
    std::set<std::string> out;
    for (const auto& w : space_.words(L))
        if (words_.count(w.substr(j, window_))) out.insert(w);
    return ClopenSet(space_, L, std::move(out));
}

namespace {

void require_same_space(const ClopenSet& a, const ClopenSet& b) {
    if (a.space() != b.space())
        throw std::invalid_argument("clopen sets from different subshifts");
}

} // namespace

ClopenSet ClopenSet::intersect(const ClopenSet& other) const {
    require_same_space(*this, other);
    int L = std::max(window_, other.window_);
    auto a = expanded(L), b = other.expanded(L);
    std::set<std::string> out;
    for (const auto& w : a.words_)
        if (b.words_.count(w)) out.insert(w);
    return ClopenSet(space_, L, std::move(out));
}

ClopenSet ClopenSet::unite(const ClopenSet& other) const {
    require_same_space(*this, other);
    int L = std::max(window_, other.window_);
    auto a = expanded(L), b = other.expanded(L);
    std::set<std::string> out = a.words_;
    out.insert(b.words_.begin(), b.words_.end());
    return ClopenSet(space_, L, std::move(out));
}

ClopenSet ClopenSet::difference(const ClopenSet& other) const {
    require_same_space(*this, other);
    int L = std::max(window_, other.window_);
    auto a = expanded(L), b = other.expanded(L);
    std::set<std::string> out;
    for (const auto& w : a.words_)
        if (!b.words_.count(w)) out.insert(w);
    return ClopenSet(space_, L, std::move(out));
}

ClopenSet ClopenSet::complement() const {
    return full(space_).difference(*this);
}

bool ClopenSet::disjoint_with(const ClopenSet& other) const {
    return intersect(other).is_empty();
}

bool ClopenSet::subset_of(const ClopenSet& other) const {
    require_same_space(*this, other);
    int L = std::max(window_, other.window_);
    auto a = expanded(L), b = other.expanded(L);
    return std::includes(b.words_.begin(), b.words_.end(),
                         a.words_.begin(), a.words_.end());
}

bool ClopenSet::operator==(const ClopenSet& other) const {
    return space_ == other.space_ && window_ == other.window_ &&
           words_ == other.words_;
}

} // namespace entropylab
