#pragma once

#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>
#include <vector>

#include "golomb/ruler.hpp"

namespace golomb {

enum class SearchMode { First, All, Prove };
enum class SearchStatus { Found, Exhausted, BudgetExceeded };

struct SearchOptions {
    SearchMode mode = SearchMode::First;
    std::optional<u64> budget;      // node cap; a node is one placed mark
    int threads = 1;                // fan-out over the second mark
    std::optional<i64> length_bound; // all marks <= bound
    std::optional<i64> exact_length; // last mark pinned to this value
};

struct SearchOutcome {
    SearchStatus status = SearchStatus::Exhausted;
    std::optional<Ruler> witness; // lexicographically least canonical witness
    u64 nodes_visited = 0;
    std::optional<i64> min_length_found; // mode All
    std::optional<u64> num_canonical;    // mode All: canonical representatives
};

namespace sdetail {

inline constexpr int kMaxOrder = 31;

struct Shared {
    std::atomic<u64> nodes{0};
    u64 budget = std::numeric_limits<u64>::max();
    std::atomic<bool> budget_hit{false};
    std::atomic<int> found_task{std::numeric_limits<int>::max()};
    bool cancel_on_found = false;

    bool note_nodes(u64 batch) { // returns true when over budget
        u64 total = nodes.fetch_add(batch) + batch;
        if (total > budget) { budget_hit.store(true); return true; }
        return budget_hit.load(std::memory_order_relaxed);
    }
};

struct TaskResult {
    bool found = false;
    bool stopped = false; // budget or cancellation cut the subtree short
    std::optional<Ruler> witness;
    std::set<std::vector<i64>> canonicals;
    std::optional<i64> min_len;
};

// Depth-first extension of partial rulers 0 = x1 < x2 < ... with a dense
// used-difference table holding one flag per unordered pair class
// {d, v-d} (modular) or per difference (plain).
class Dfs {
public:
    Dfs(i64 v, i64 k, SearchMode mode, i64 last_cap, i64 exact_last, bool modular,
        bool gap_dominant, Shared* shared, int task_index)
        : v_(static_cast<int>(v)), k_(static_cast<int>(k)), mode_(mode),
          exact_last_(static_cast<int>(exact_last)), modular_(modular),
          gap_dominant_(gap_dominant), shared_(shared), task_index_(task_index) {
        used_.assign(static_cast<std::size_t>(modular_ ? v_ / 2 + 1 : last_cap + 1), 0);
        if (modular_ && v_ % 2 == 0) used_[static_cast<std::size_t>(v_ / 2)] = 1;
        for (int d = 0; d < k_; ++d) {
            int rem = k_ - 1 - d;
            cap_[d] = static_cast<int>(last_cap) - rem * (rem + 1) / 2;
        }
        if (!modular_) {
            // plain searches pin the last mark: its differences prune early
            marks_[k_ - 1] = exact_last_;
            used_[static_cast<std::size_t>(exact_last_)] = 1;
        }
        marks_[0] = 0;
    }

    TaskResult run(int x2) {
        result_ = TaskResult{};
        place_and_recurse(x2, 1);
        flush();
        return std::move(result_);
    }

private:
    int cls(int d) const { return modular_ && 2 * d > v_ ? v_ - d : d; }

    void flush() {
        if (pending_ == 0 || shared_ == nullptr) return;
        if (shared_->note_nodes(pending_)) result_.stopped = true;
        pending_ = 0;
    }

    bool should_stop() {
        flush();
        if (shared_ == nullptr) return false;
        if (shared_->budget_hit.load(std::memory_order_relaxed)) { result_.stopped = true; return true; }
        if (shared_->cancel_on_found &&
            shared_->found_task.load(std::memory_order_relaxed) < task_index_)
            return true;
        return false;
    }

    // returns true when the whole task should unwind
    bool place_and_recurse(int x, int depth) {
        int ncls = 0;
        int* cw = cls_scratch_ + depth * kMaxOrder;
        const int upto = modular_ ? depth : depth + 1; // plain: also the pinned last mark
        for (int i = 0; i < upto; ++i) {
            int m = (i == depth) ? marks_[k_ - 1] : marks_[i];
            int d = x > m ? x - m : m - x;
            int c = cls(d);
            if (used_[static_cast<std::size_t>(c)]) {
                for (int j = 0; j < ncls; ++j) used_[static_cast<std::size_t>(cw[j])] = 0;
                return false;
            }
            used_[static_cast<std::size_t>(c)] = 1;
            cw[ncls++] = c;
        }
        marks_[depth] = x;
        ++local_nodes_;
        if (++pending_ >= 2048 && should_stop()) {
            for (int j = 0; j < ncls; ++j) used_[static_cast<std::size_t>(cw[j])] = 0;
            return true;
        }
        bool stop = recurse(depth + 1);
        for (int j = 0; j < ncls; ++j) used_[static_cast<std::size_t>(cw[j])] = 0;
        return stop;
    }

    bool recurse(int depth) {
        const int complete_depth = modular_ ? k_ : k_ - 1;
        if (depth == complete_depth) return complete();
        int lo = marks_[depth - 1] + 1;
        int hi = cap_[depth];
        if (gap_dominant_) {
            // every gap stays at most x2, and the wrap gap must too, which
            // bounds each mark from below
            int x2 = marks_[1];
            hi = std::min(hi, marks_[depth - 1] + x2);
            lo = std::max(lo, v_ - (k_ - depth) * x2);
        }
        if (modular_ && exact_last_ >= 0 && depth == k_ - 1) {
            if (exact_last_ < lo || exact_last_ > hi) return false;
            lo = hi = exact_last_;
        }
        for (int x = lo; x <= hi; ++x) {
            if (place_and_recurse(x, depth)) return true;
        }
        return false;
    }

    bool complete() {
        if (gap_dominant_) {
            // keep only rotations whose leading gap is weakly maximal
            if (v_ - marks_[k_ - 1] > marks_[1]) return false;
        } else if (modular_) {
            // reflection filter: drop the mirror with the larger second mark
            if (marks_[1] > v_ - marks_[k_ - 1]) return false;
        } else {
            if (marks_[1] > marks_[k_ - 1] - marks_[k_ - 2]) return false;
        }
        std::vector<i64> m(static_cast<std::size_t>(k_));
        for (int i = 0; i < k_; ++i) m[static_cast<std::size_t>(i)] = marks_[i];
        Ruler r{modular_ ? v_ : 0, std::move(m)};
        if (mode_ == SearchMode::All) {
            result_.found = true;
            result_.canonicals.insert(canonicalize(r).marks);
            // with gap dominance the leading gap is the class maximum, so
            // v - x2 is that class's minimal representative length
            i64 len = gap_dominant_ ? v_ - marks_[1] : r.length();
            if (!result_.min_len || len < *result_.min_len) result_.min_len = len;
            return false;
        }
        result_.found = true;
        result_.witness = std::move(r);
        if (shared_ && shared_->cancel_on_found) {
            int cur = shared_->found_task.load();
            while (task_index_ < cur &&
                   !shared_->found_task.compare_exchange_weak(cur, task_index_)) {
            }
        }
        return true;
    }

    int v_, k_;
    SearchMode mode_;
    int exact_last_;
    bool modular_;
    bool gap_dominant_;
    Shared* shared_;
    int task_index_;
    int marks_[kMaxOrder + 1] = {};
    int cap_[kMaxOrder + 1] = {};
    int cls_scratch_[(kMaxOrder + 1) * kMaxOrder] = {};
    std::vector<char> used_;
    u64 local_nodes_ = 0;
    u64 pending_ = 0;
    TaskResult result_;
};

struct MergedTasks {
    std::vector<TaskResult> results;
    u64 nodes = 0;
    bool budget_hit = false;
};

// Runs one task per second-mark candidate; sequential when threads <= 1.
inline MergedTasks run_tasks(i64 v, i64 k, SearchMode mode, i64 last_cap, i64 exact_last,
                             bool modular, bool gap_dominant, std::optional<u64> budget,
                             int threads, const std::vector<int>& x2_list) {
    Shared shared;
    if (budget) shared.budget = *budget;
    shared.cancel_on_found = (mode != SearchMode::All);

    MergedTasks merged;
    merged.results.resize(x2_list.size());

    auto run_one = [&](std::size_t idx) {
        Dfs dfs(v, k, mode, last_cap, exact_last, modular, gap_dominant, &shared,
                static_cast<int>(idx));
        merged.results[idx] = dfs.run(x2_list[idx]);
    };

    if (threads <= 1 || x2_list.size() <= 1) {
        for (std::size_t i = 0; i < x2_list.size(); ++i) {
            run_one(i);
            if (shared.cancel_on_found && merged.results[i].found) break;
            if (shared.budget_hit.load()) {
                merged.budget_hit = true;
                break;
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= x2_list.size()) return;
                if (shared.budget_hit.load()) { merged.results[i].stopped = true; continue; }
                run_one(i);
            }
        };
        std::vector<std::thread> pool;
        int nt = std::min<int>(threads, static_cast<int>(x2_list.size()));
        pool.reserve(static_cast<std::size_t>(nt));
        for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    merged.nodes = shared.nodes.load();
    merged.budget_hit = merged.budget_hit || shared.budget_hit.load();
    return merged;
}

} // namespace sdetail

/// Exhaustive backtracking search over (v,k)-MGRs.
///   First/Prove: stops at the lexicographically least witness, or proves
///                nonexistence by exhausting the tree.
///   All:         counts canonical representatives.
/// Budget exhaustion is reported distinctly and never as `Exhausted`.
inline SearchOutcome search(i64 v, i64 k, const SearchOptions& opt = {}) {
    if (k < 3) throw std::invalid_argument("search: k must be >= 3");
    if (v < k) throw std::invalid_argument("search: v must be >= k");
    if (k > sdetail::kMaxOrder) throw std::invalid_argument("search: order too large");
    if (v > (i64(1) << 22)) throw std::invalid_argument("search: modulus too large");

    i64 last_cap = std::min<i64>(v - 1, opt.length_bound.value_or(v - 1));
    i64 exact_last = -1;
    if (opt.exact_length) {
        exact_last = *opt.exact_length;
        if (exact_last < 1 || exact_last > v - 1)
            throw std::invalid_argument("search: exact_length out of range");
        last_cap = std::min(last_cap, exact_last);
    }

    // First mode enumerates plainly so the first hit is the global
    // lexicographic minimum; Prove and All restrict to rotations whose
    // leading gap is maximal (every class retains one) and dedup at
    // emission.
    const bool gap_dominant = (opt.mode != SearchMode::First) && !opt.exact_length;

    std::vector<int> x2_list;
    {
        int rem = static_cast<int>(k) - 2;
        int hi = static_cast<int>(last_cap) - rem * (rem + 1) / 2;
        int lo = gap_dominant ? static_cast<int>((v + k - 1) / k) : 1;
        for (int x2 = lo; x2 <= hi; ++x2) x2_list.push_back(x2);
        // large leading gaps mean short class representatives; visiting them
        // first lets Prove report the shortest class it can
        if (gap_dominant) std::reverse(x2_list.begin(), x2_list.end());
    }

    auto merged = sdetail::run_tasks(v, k, opt.mode, last_cap, exact_last, true, gap_dominant,
                                     opt.budget, opt.threads, x2_list);

    SearchOutcome out;
    out.nodes_visited = merged.nodes;
    if (opt.mode == SearchMode::All) {
        std::set<std::vector<i64>> all;
        for (auto& r : merged.results) {
            all.merge(r.canonicals);
            if (r.min_len && (!out.min_length_found || *r.min_len < *out.min_length_found))
                out.min_length_found = r.min_len;
        }
        if (merged.budget_hit) {
            out.status = SearchStatus::BudgetExceeded;
        } else {
            out.status = all.empty() ? SearchStatus::Exhausted : SearchStatus::Found;
        }
        out.num_canonical = all.size();
        if (!all.empty()) out.witness = Ruler{v, *all.begin()};
        return out;
    }
    for (auto& r : merged.results) {
        if (r.found) {
            out.status = SearchStatus::Found;
            out.witness = std::move(r.witness);
            return out;
        }
    }
    out.status = merged.budget_hit ? SearchStatus::BudgetExceeded : SearchStatus::Exhausted;
    return out;
}

/// Minimal length over all (v,k)-MGRs, none when no ruler exists.
/// Iterative deepening on the pinned last mark.
inline std::optional<i64> min_length(i64 v, i64 k, int threads = 1,
                                     std::optional<u64> budget = std::nullopt) {
    SearchOptions probe;
    probe.mode = SearchMode::First;
    probe.threads = threads;
    probe.budget = budget;
    SearchOutcome exists = search(v, k, probe);
    if (exists.status == SearchStatus::BudgetExceeded)
        throw std::runtime_error("min_length: node budget exhausted");
    if (exists.status == SearchStatus::Exhausted) return std::nullopt;
    i64 found_len = exists.witness->length();
    for (i64 b = k * (k - 1) / 2; b < found_len; ++b) {
        SearchOptions opt = probe;
        opt.exact_length = b;
        SearchOutcome o = search(v, k, opt);
        if (o.status == SearchStatus::BudgetExceeded)
            throw std::runtime_error("min_length: node budget exhausted");
        if (o.status == SearchStatus::Found) return b;
    }
    return found_len;
}

/// Minimal length of an order-k plain Golomb ruler, by non-modular
/// backtracking with increasing pinned lengths.
inline i64 golomb_min_length(i64 k, int threads = 1) {
    if (k < 3) throw std::invalid_argument("golomb_min_length: k must be >= 3");
    if (k > sdetail::kMaxOrder) throw std::invalid_argument("golomb_min_length: order too large");
    for (i64 b = k * (k - 1) / 2;; ++b) {
        std::vector<int> x2_list;
        int rem = static_cast<int>(k) - 2; // middles between x2 and the pinned end
        int hi = static_cast<int>(b) - rem * (rem + 1) / 2;
        for (int x2 = 1; x2 <= hi; ++x2) x2_list.push_back(x2);
        auto merged = sdetail::run_tasks(0, k, SearchMode::First, b, b, false, false,
                                         std::nullopt, threads, x2_list);
        for (auto& r : merged.results) {
            if (r.found) return b;
        }
    }
}

/// Per-modulus record of a spectrum scan.
struct SpectrumEntry {
    i64 v = 0;
    SearchStatus status = SearchStatus::Exhausted;
    std::optional<Ruler> witness;
    u64 nodes = 0;
};

/// MGR(k) described by its sporadic members and the first modulus from
/// which every larger modulus admits a ruler.
struct Spectrum {
    i64 k = 0;
    std::vector<i64> sporadic;
    i64 tail_start = 0;
    bool complete = true;
    i64 best_length = 0;
    std::optional<Ruler> best_ruler;
    std::vector<SpectrumEntry> trail;
};

/// Scans v upward from k^2-k+1, proving or refuting each modulus and
/// tracking the shortest ruler seen; once v reaches 2L+1 every larger
/// modulus is covered by re-reading that ruler.
inline Spectrum spectrum(i64 k, std::optional<u64> budget = std::nullopt, int threads = 1) {
    if (k < 3) throw std::invalid_argument("spectrum: k must be >= 3");
    Spectrum sp;
    sp.k = k;
    i64 best = std::numeric_limits<i64>::max();
    i64 last_nonexistent = 0;
    u64 used_nodes = 0;
    auto remaining = [&]() -> std::optional<u64> {
        if (!budget) return std::nullopt;
        return *budget > used_nodes ? std::optional<u64>(*budget - used_nodes) : std::optional<u64>(0);
    };

    for (i64 v = k * k - k + 1;; ++v) {
        SearchOptions opt;
        opt.mode = SearchMode::Prove;
        opt.threads = threads;
        opt.budget = remaining();
        SearchOutcome o = search(v, k, opt);
        used_nodes += o.nodes_visited;
        sp.trail.push_back({v, o.status,
                            o.witness ? std::optional<Ruler>(canonicalize(*o.witness))
                                      : std::nullopt,
                            o.nodes_visited});
        if (o.status == SearchStatus::BudgetExceeded) {
            sp.complete = false;
            break;
        }
        if (o.status == SearchStatus::Found) {
            // a Prove witness has its leading gap maximal, so rotating it
            // to start after that gap gives the class's shortest
            // representative; that clamps the tail sooner
            const Ruler& w = *o.witness;
            i64 wlen = v - w.marks[1];
            if (wlen < best) {
                std::vector<i64> rot(w.marks.size());
                for (std::size_t i = 0; i < w.marks.size(); ++i) {
                    rot[i] = ((w.marks[i] - w.marks[1]) % v + v) % v;
                }
                std::sort(rot.begin(), rot.end());
                best = wlen;
                sp.best_ruler = Ruler{v, std::move(rot)};
            }
        } else {
            last_nonexistent = v;
        }
        if (best != std::numeric_limits<i64>::max() && v >= 2 * best + 1) break;
    }

    sp.best_length = best == std::numeric_limits<i64>::max() ? 0 : best;
    sp.tail_start = last_nonexistent > 0 ? last_nonexistent + 1 : k * k - k + 1;
    for (const auto& e : sp.trail) {
        if (e.status == SearchStatus::Found && e.v < sp.tail_start) sp.sporadic.push_back(e.v);
    }
    return sp;
}

/// Outcome of a difference-packing search (n blocks of size k in Z_v).
struct PackOutcome {
    SearchStatus status = SearchStatus::Exhausted;
    std::vector<std::vector<i64>> blocks;
    u64 nodes = 0;
};

namespace sdetail {

struct PackDfs {
    int v, k, n;
    u64 cap;
    std::vector<char> used;
    std::vector<std::vector<int>> blocks;
    u64 nodes = 0;
    bool over_budget = false;

    PackDfs(int v_, int k_, int n_, u64 cap_) : v(v_), k(k_), n(n_), cap(cap_) {
        used.assign(static_cast<std::size_t>(v / 2 + 1), 0);
        if (v % 2 == 0) used[static_cast<std::size_t>(v / 2)] = 1;
        blocks.resize(static_cast<std::size_t>(n));
    }

    int cls(int d) const { return 2 * d > v ? v - d : d; }

    bool next_block(int bi) {
        if (bi == n) return true;
        blocks[static_cast<std::size_t>(bi)].assign(1, 0);
        return extend(bi, 1, bi > 0);
    }

    // blocks are normalized to contain 0, elements ascend, and the block
    // sequence is lexicographically nondecreasing (ties die on a repeated
    // difference, so it is effectively increasing)
    bool extend(int bi, int pos, bool tight) {
        auto& blk = blocks[static_cast<std::size_t>(bi)];
        if (pos == k) return next_block(bi + 1);
        int lo = blk.back() + 1;
        if (tight) lo = std::max(lo, blocks[static_cast<std::size_t>(bi - 1)][static_cast<std::size_t>(pos)]);
        int local[kMaxOrder];
        for (int x = lo; x <= v - (k - pos); ++x) {
            int ncls = 0;
            bool ok = true;
            for (int e : blk) {
                int c = cls(x - e);
                if (used[static_cast<std::size_t>(c)]) { ok = false; break; }
                used[static_cast<std::size_t>(c)] = 1;
                local[ncls++] = c;
            }
            if (ok) {
                if (++nodes > cap) over_budget = true;
                blk.push_back(x);
                bool still_tight =
                    tight && x == blocks[static_cast<std::size_t>(bi - 1)][static_cast<std::size_t>(pos)];
                if (!over_budget && extend(bi, pos + 1, still_tight)) return true;
                blk.pop_back();
            }
            for (int j = 0; j < ncls; ++j) used[static_cast<std::size_t>(local[j])] = 0;
            if (over_budget) return false;
        }
        return false;
    }
};

} // namespace sdetail

/// Backtracking search for a (v,k;n)-difference packing.  Blocks are
/// normalized to contain 0 and ordered lexicographically.
inline PackOutcome pack_search(i64 v, i64 k, i64 n, std::optional<u64> budget = std::nullopt) {
    if (k < 2 || n < 1 || v < k) throw std::invalid_argument("pack_search: bad parameters");
    if (k > sdetail::kMaxOrder) throw std::invalid_argument("pack_search: block size too large");
    sdetail::PackDfs dfs(static_cast<int>(v), static_cast<int>(k), static_cast<int>(n),
                         budget.value_or(std::numeric_limits<u64>::max()));
    PackOutcome out;
    bool found = dfs.next_block(0);
    out.nodes = dfs.nodes;
    if (found) {
        out.status = SearchStatus::Found;
        for (auto& b : dfs.blocks) out.blocks.emplace_back(b.begin(), b.end());
    } else {
        out.status = dfs.over_budget ? SearchStatus::BudgetExceeded : SearchStatus::Exhausted;
    }
    return out;
}

} // namespace golomb
