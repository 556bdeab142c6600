#include "cglearn/skeleton.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "cglearn/graph_io.hpp"

namespace cglearn {

VariableOrdering::VariableOrdering(std::vector<VertexId> sequence)
    : sequence_(std::move(sequence)), position_(sequence_.size(), sequence_.size()) {
    const std::size_t p = sequence_.size();
    for (std::size_t pos = 0; pos < p; ++pos) {
        const VertexId v = sequence_[pos];
        if (v >= p || position_[v] != p) {
            throw Error("VariableOrdering: sequence is not a permutation of 0.." +
                        std::to_string(p ? p - 1 : 0));
        }
        position_[v] = pos;
    }
}

VariableOrdering VariableOrdering::natural(std::size_t p) {
    std::vector<VertexId> seq(p);
    for (std::size_t i = 0; i < p; ++i) seq[i] = static_cast<VertexId>(i);
    return VariableOrdering(std::move(seq));
}

bool SeparationSets::contains(VertexId u, VertexId v) const {
    return map_.count(detail::unordered_key(u, v)) != 0;
}

const VertexSet& SeparationSets::get(VertexId u, VertexId v) const {
    const auto it = map_.find(detail::unordered_key(u, v));
    if (it == map_.end()) {
        throw MissingSepset("no separating set recorded for pair {" + std::to_string(u) +
                            ", " + std::to_string(v) + "}");
    }
    return it->second;
}

void SeparationSets::set(VertexId u, VertexId v, VertexSet s) {
    normalize_set(s);
    map_[detail::unordered_key(u, v)] = std::move(s);
}

std::vector<std::pair<EdgePair, VertexSet>> SeparationSets::items() const {
    std::vector<std::pair<EdgePair, VertexSet>> out;
    out.reserve(map_.size());
    for (const auto& [key, set] : map_) {
        out.emplace_back(EdgePair{static_cast<VertexId>(key >> 32),
                                  static_cast<VertexId>(key & 0xffffffffu)},
                         set);
    }
    std::sort(out.begin(), out.end());
    return out;
}

SymmetricAdjacency::SymmetricAdjacency(std::size_t p, bool complete)
    : p_(p), cells_(p * p, complete ? 1 : 0), degree_(p, complete && p > 0 ? p - 1 : 0) {
    if (complete) {
        for (VertexId v = 0; v < p_; ++v) cells_[v * p_ + v] = 0;
    }
}

SymmetricAdjacency SymmetricAdjacency::complete_graph(std::size_t p) {
    return SymmetricAdjacency(p, true);
}

SymmetricAdjacency SymmetricAdjacency::from_graph(const MixedGraph& g) {
    SymmetricAdjacency adj(g.vertex_count());
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        for (VertexId v : g.adjacency(u)) {
            if (u < v) adj.set(u, v);
        }
    }
    return adj;
}

void SymmetricAdjacency::set(VertexId u, VertexId v) {
    if (at(u, v) || u == v) return;
    cells_[u * p_ + v] = cells_[v * p_ + u] = 1;
    ++degree_[u];
    ++degree_[v];
}

void SymmetricAdjacency::clear(VertexId u, VertexId v) {
    if (!at(u, v)) return;
    cells_[u * p_ + v] = cells_[v * p_ + u] = 0;
    --degree_[u];
    --degree_[v];
}

VertexSet SymmetricAdjacency::neighbors(VertexId u) const {
    VertexSet out;
    out.reserve(degree_[u]);
    for (VertexId v = 0; v < p_; ++v)
        if (at(u, v)) out.push_back(v);
    return out;
}

std::vector<VertexId> SymmetricAdjacency::neighbors_by_position(
    VertexId u, const VariableOrdering& order, VertexId excluded) const {
    std::vector<VertexId> out;
    out.reserve(degree_[u]);
    for (std::size_t pos = 0; pos < p_; ++pos) {
        const VertexId x = order.at(pos);
        if (x != excluded && at(u, x)) out.push_back(x);
    }
    return out;
}

MixedGraph SymmetricAdjacency::to_graph() const {
    MixedGraphBuilder builder(p_);
    for (VertexId u = 0; u < p_; ++u) {
        for (VertexId v = u + 1; v < p_; ++v) {
            if (at(u, v)) builder.add_undirected(u, v);
        }
    }
    return builder.build();
}

void for_each_subset(const std::vector<VertexId>& base, std::size_t k,
                     const std::function<bool(const VertexSet&)>& visit) {
    const std::size_t n = base.size();
    if (k > n) return;
    if (k == 0) {
        visit(VertexSet{});
        return;
    }
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    VertexSet subset(k);
    for (;;) {
        for (std::size_t i = 0; i < k; ++i) subset[i] = base[idx[i]];
        if (!visit(subset)) return;
        // advance the combination
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (idx[i] != i + n - k) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
    }
}

std::vector<VertexSet> enumerate_subsets(const std::vector<VertexId>& base, std::size_t k) {
    std::vector<VertexSet> out;
    for_each_subset(base, k, [&](const VertexSet& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

std::vector<std::pair<VertexId, VertexId>> eligible_pairs(const SymmetricAdjacency& adj,
                                                          const VariableOrdering& order,
                                                          int level) {
    std::vector<std::pair<VertexId, VertexId>> pairs;
    if (level < 0) return pairs;
    const std::size_t p = adj.vertex_count();
    for (std::size_t pu = 0; pu < p; ++pu) {
        const VertexId u = order.at(pu);
        for (std::size_t pv = 0; pv < p; ++pv) {
            if (pu == pv) continue;
            const VertexId v = order.at(pv);
            if (!adj.at(u, v)) continue;
            const std::size_t others = adj.degree(u) - 1;  // v is adjacent to u here
            if (others >= static_cast<std::size_t>(level)) pairs.emplace_back(u, v);
        }
    }
    return pairs;
}

namespace {

std::string render_set(const VertexSet& s) {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << s[i];
    out << '}';
    return out.str();
}

CIResult checked_query(const CIOracle& oracle, VertexId u, VertexId v, const VertexSet& s) {
    try {
        return oracle.query(u, v, s);
    } catch (const std::exception& e) {
        throw Error("skeleton: ci query (" + std::to_string(u) + "," + std::to_string(v) +
                    "|" + render_set(s) + ") failed: " + e.what());
    }
}

/// First separating set of size `level` inside base (position order), if any.
std::optional<VertexSet> search_pair(const CIOracle& oracle, VertexId u, VertexId v,
                                     const std::vector<VertexId>& base, int level) {
    std::optional<VertexSet> found;
    for_each_subset(base, static_cast<std::size_t>(level), [&](const VertexSet& s) {
        if (checked_query(oracle, u, v, s).independent) {
            found = s;
            return false;
        }
        return true;
    });
    return found;
}

struct PairTask {
    VertexId u, v;
    std::vector<VertexId> base;
};

/// Fixed pool of workers reused across levels; the calling thread joins in.
class WorkerPool {
public:
    explicit WorkerPool(unsigned extra_threads) {
        threads_.reserve(extra_threads);
        for (unsigned i = 0; i < extra_threads; ++i) {
            threads_.emplace_back([this] { worker_loop(); });
        }
    }

    ~WorkerPool() {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            stop_ = true;
        }
        start_cv_.notify_all();
        for (auto& thread : threads_) thread.join();
    }

    /// Runs body(0..count-1) across the pool and rethrows the first failure.
    void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
        if (count == 0) return;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            body_ = &body;
            count_ = count;
            next_.store(0, std::memory_order_relaxed);
            pending_.store(count, std::memory_order_relaxed);
            failure_ = nullptr;
            ++generation_;
        }
        start_cv_.notify_all();
        drain();
        std::unique_lock<std::mutex> lock(mutex_);
        done_cv_.wait(lock, [this] { return pending_.load(std::memory_order_acquire) == 0; });
        body_ = nullptr;
        if (failure_) std::rethrow_exception(failure_);
    }

private:
    void drain() {
        for (;;) {
            const std::size_t i = next_.fetch_add(1, std::memory_order_relaxed);
            if (i >= count_) return;
            try {
                (*body_)(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mutex_);
                if (!failure_) failure_ = std::current_exception();
            }
            if (pending_.fetch_sub(1, std::memory_order_acq_rel) == 1) {
                std::lock_guard<std::mutex> lock(mutex_);
                done_cv_.notify_all();
            }
        }
    }

    void worker_loop() {
        std::uint64_t seen = 0;
        for (;;) {
            {
                std::unique_lock<std::mutex> lock(mutex_);
                start_cv_.wait(lock, [&] { return stop_ || generation_ != seen; });
                if (stop_) return;
                seen = generation_;
            }
            drain();
        }
    }

    std::vector<std::thread> threads_;
    std::mutex mutex_;
    std::condition_variable start_cv_, done_cv_;
    const std::function<void(std::size_t)>* body_ = nullptr;
    std::size_t count_ = 0;
    std::atomic<std::size_t> next_{0};
    std::atomic<std::size_t> pending_{0};
    std::uint64_t generation_ = 0;
    bool stop_ = false;
    std::exception_ptr failure_;
};

void run_level_parallel(const CIOracle& oracle, const VariableOrdering& order, int level,
                        const SymmetricAdjacency& snapshot, SymmetricAdjacency& adj,
                        SeparationSets& sepsets, bool& any_eligible, WorkerPool& pool) {
    const std::size_t p = adj.vertex_count();
    std::vector<PairTask> tasks;
    for (std::size_t pu = 0; pu < p; ++pu) {
        const VertexId u = order.at(pu);
        for (std::size_t pv = 0; pv < p; ++pv) {
            if (pu == pv) continue;
            const VertexId v = order.at(pv);
            if (!snapshot.at(u, v)) continue;
            auto base = snapshot.neighbors_by_position(u, order, v);
            if (base.size() >= static_cast<std::size_t>(level)) {
                tasks.push_back(PairTask{u, v, std::move(base)});
            }
        }
    }
    any_eligible = !tasks.empty();
    if (tasks.empty()) return;

    std::vector<std::optional<VertexSet>> findings(tasks.size());
    pool.parallel_for(tasks.size(), [&](std::size_t i) {
        findings[i] = search_pair(oracle, tasks[i].u, tasks[i].v, tasks[i].base, level);
    });

    // Commit removals in deterministic pair order; late findings for an edge
    // that is already gone are discarded, matching the sequential sweep.
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (!findings[i]) continue;
        const auto& task = tasks[i];
        if (!adj.at(task.u, task.v)) continue;
        sepsets.set(task.u, task.v, *findings[i]);
        adj.clear(task.u, task.v);
    }
}

}  // namespace

SkeletonResult learn_skeleton(const CIOracle& oracle, const VariableOrdering& order,
                              const SkeletonOptions& options) {
    const std::size_t p = order.size();
    if (p != oracle.variable_count()) {
        throw Error("learn_skeleton: ordering covers " + std::to_string(p) +
                    " variables, oracle has " + std::to_string(oracle.variable_count()));
    }
    unsigned threads = std::max(1u, options.threads);
    if (options.capture_trace) threads = 1;
    if (threads > 1 && options.mode != SkeletonMode::stable) {
        throw Error("learn_skeleton: parallel execution requires stable mode");
    }

    SkeletonResult result{MixedGraph(p), {}, {}, 0, -1};
    SymmetricAdjacency adj = SymmetricAdjacency::complete_graph(p);
    const std::uint64_t queries_before = oracle.test_count();
    const bool stable = options.mode == SkeletonMode::stable;

    std::unique_ptr<WorkerPool> pool;
    if (threads > 1) pool = std::make_unique<WorkerPool>(threads - 1);

    for (int level = 0; p >= 2 && level <= static_cast<int>(p) - 2; ++level) {
        bool any_eligible = false;
        if (threads > 1) {
            const SymmetricAdjacency snapshot = adj;
            run_level_parallel(oracle, order, level, snapshot, adj, result.sepsets,
                               any_eligible, *pool);
        } else {
            const SymmetricAdjacency snapshot = stable ? adj : SymmetricAdjacency(0);
            const SymmetricAdjacency& view = stable ? snapshot : adj;
            for (std::size_t pu = 0; pu < p; ++pu) {
                const VertexId u = order.at(pu);
                for (std::size_t pv = 0; pv < p; ++pv) {
                    if (pu == pv) continue;
                    const VertexId v = order.at(pv);
                    if (!adj.at(u, v)) continue;  // removed earlier (possibly this level)
                    const auto base = view.neighbors_by_position(u, order, v);
                    const bool eligible = base.size() >= static_cast<std::size_t>(level);
                    any_eligible = any_eligible || eligible;
                    VertexSet adjacency_at_selection;
                    if (options.capture_trace) adjacency_at_selection = view.neighbors(u);
                    std::optional<VertexSet> found;
                    if (eligible) found = search_pair(oracle, u, v, base, level);
                    if (found) {
                        result.sepsets.set(u, v, *found);
                        adj.clear(u, v);
                    }
                    if (options.capture_trace) {
                        TraceRow row;
                        row.level = level;
                        row.u = u;
                        row.v = v;
                        row.adjacency_u = std::move(adjacency_at_selection);
                        if (found) {
                            row.sepset = *found;
                            normalize_set(row.sepset);
                        }
                        row.eligible = eligible;
                        row.removed = found.has_value();
                        result.trace.push_back(std::move(row));
                    }
                }
            }
        }
        if (!any_eligible) break;
        result.max_level_reached = level;
    }

    result.graph = adj.to_graph();
    result.ci_queries = oracle.test_count() - queries_before;
    return result;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace,
                     const std::vector<std::string>* labels) {
    out << "# cglearn.trace.v1\n";
    out << "level,u,v,adj_u,sepset,removed\n";
    for (const auto& row : trace) {
        out << row.level << ',' << vertex_name(row.u, labels) << ','
            << vertex_name(row.v, labels) << ",\"";
        for (std::size_t i = 0; i < row.adjacency_u.size(); ++i) {
            out << (i ? " " : "") << vertex_name(row.adjacency_u[i], labels);
        }
        out << "\",\"";
        for (std::size_t i = 0; i < row.sepset.size(); ++i) {
            out << (i ? " " : "") << vertex_name(row.sepset[i], labels);
        }
        out << "\"," << (row.removed ? 1 : 0) << '\n';
    }
}

}  // namespace cglearn
