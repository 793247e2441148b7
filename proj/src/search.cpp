#include "fes/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "fes/structure.hpp"

namespace fes {

GridSpec GridSpec::ones_grid(std::vector<Coord> extents) {
  GridSpec g;
  g.d = DimVec::ones(static_cast<int>(extents.size()));
  g.extents = std::move(extents);
  return g;
}

EmitFilter dedupe_canonical(const SymmetryGroup& group) {
  return [group](const ExcSeq& seq) {
    return translated_to_origin(seq).points == canonical_form(seq, group).points;
  };
}

namespace {

constexpr int kMaxSearchRank = 8;
constexpr int kMaxSeqLen = 64;
constexpr int kMaxCells = 40000;

struct Key128 {
  std::uint64_t a = 0, b = 0;
  bool operator==(const Key128&) const = default;
};

struct Key128Hash {
  std::size_t operator()(const Key128& k) const {
    std::uint64_t h = k.a * 0x9e3779b97f4a7c15ull;
    h ^= k.b + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

struct SearchContext {
  GridSpec grid;
  int rank = 0;
  int n = 0;  // target sequence length
  std::array<int, kMaxSearchRank> box_size{};
  std::array<Coord, kMaxSearchRank> box_lo{};
  std::array<int, kMaxSearchRank> stride{};
  std::array<long long, kMaxSearchRank> layer_cap{};
  int cells = 0;
  int words = 0;
  std::vector<std::uint64_t> adm;                    // cells x words
  std::vector<std::array<std::int16_t, kMaxSearchRank>> coords_of;
  int origin = 0;
  int key_bits = 0;  // per coordinate; 0 = closure cache disabled

  const std::uint64_t* adm_row(int cell) const { return adm.data() + static_cast<std::size_t>(cell) * words; }
};

SearchContext build_context(const GridSpec& grid) {
  SearchContext ctx;
  ctx.grid = grid;
  ctx.rank = grid.rank();
  if (ctx.rank < 1 || ctx.rank > kMaxSearchRank)
    throw std::invalid_argument("search supports 1 <= rank <= 8");
  if (grid.d.rank() != ctx.rank) throw std::invalid_argument("d arity mismatch");
  long long n = grid.d.max_length();
  if (n > kMaxSeqLen) throw std::invalid_argument("target sequence length too large");
  ctx.n = static_cast<int>(n);

  long long cells = 1;
  for (int k = 0; k < ctx.rank; ++k) {
    Coord ext = grid.extents[k];
    if (ext < 1 || ext > 1000) throw std::invalid_argument("grid extent out of range");
    ctx.box_size[k] = static_cast<int>(2 * ext - 1);
    ctx.box_lo[k] = -(ext - 1);
    ctx.stride[k] = static_cast<int>(cells);
    cells *= ctx.box_size[k];
    ctx.layer_cap[k] = n / (grid.d.entries[k] + 1);
  }
  if (cells > kMaxCells) throw std::invalid_argument("grid too large to enumerate");
  ctx.cells = static_cast<int>(cells);
  ctx.words = (ctx.cells + 63) / 64;

  ctx.coords_of.resize(ctx.cells);
  for (int c = 0; c < ctx.cells; ++c) {
    int rest = c;
    for (int k = 0; k < ctx.rank; ++k) {
      ctx.coords_of[c][k] = static_cast<std::int16_t>(ctx.box_lo[k] + rest % ctx.box_size[k]);
      rest /= ctx.box_size[k];
    }
  }

  int origin = 0;
  for (int k = 0; k < ctx.rank; ++k)
    origin += static_cast<int>(-ctx.box_lo[k]) * ctx.stride[k];
  ctx.origin = origin;

  // adm[p] holds the cells q that may follow p: some axis nu has
  // (q - p)_nu in {1, ..., d_nu}.
  ctx.adm.assign(static_cast<std::size_t>(ctx.cells) * ctx.words, 0);
  for (int p = 0; p < ctx.cells; ++p) {
    std::uint64_t* row = ctx.adm.data() + static_cast<std::size_t>(p) * ctx.words;
    for (int q = 0; q < ctx.cells; ++q) {
      bool ok = false;
      for (int k = 0; k < ctx.rank && !ok; ++k) {
        int diff = ctx.coords_of[q][k] - ctx.coords_of[p][k];
        ok = diff >= 1 && diff <= grid.d.entries[k];
      }
      if (ok) row[q >> 6] |= 1ull << (q & 63);
    }
  }

  int need_bits = 1;
  Coord max_ext = *std::max_element(grid.extents.begin(), grid.extents.end());
  while ((Coord{1} << need_bits) < max_ext) ++need_bits;
  if (ctx.n * ctx.rank * need_bits <= 128 && ctx.rank * need_bits <= 64)
    ctx.key_bits = need_bits;
  return ctx;
}

struct Aggregate {
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
  std::uint64_t emitted = 0;
  bool all_full = true;
  int max_steps = 0;
  std::map<int, std::uint64_t> step_histogram;
  std::map<std::string, std::uint64_t> distribution_histogram;
  std::set<std::vector<std::uint32_t>> labeling_classes;
  std::uint64_t structure_failures = 0;
  std::vector<ExcSeq> counterexamples;
  std::vector<ExcSeq> unknowns;

  void merge(Aggregate&& other) {
    nodes += other.nodes;
    leaves += other.leaves;
    emitted += other.emitted;
    all_full = all_full && other.all_full;
    max_steps = std::max(max_steps, other.max_steps);
    for (auto& [k, v] : other.step_histogram) step_histogram[k] += v;
    for (auto& [k, v] : other.distribution_histogram) distribution_histogram[k] += v;
    labeling_classes.merge(other.labeling_classes);
    structure_failures += other.structure_failures;
    for (auto& s : other.counterexamples) counterexamples.push_back(std::move(s));
    for (auto& s : other.unknowns) unknowns.push_back(std::move(s));
  }
};

constexpr std::size_t kKeepExamples = 16;

struct SharedState {
  const SearchContext* ctx;
  const SearchOptions* opt;
  const EmitFilter* filter;
  const SeqSink* sink;
  bool verify = false;
  std::atomic<bool> cancel{false};
  std::mutex sink_mutex;
};

struct Shard {
  SharedState* shared;
  int id = 0;
  Aggregate agg;
  std::vector<std::uint64_t> cand_stack;                   // (n+1) x words
  std::array<int, kMaxSeqLen> chosen{};                    // cell per level
  std::array<std::array<std::int16_t, kMaxSearchRank>, kMaxSeqLen + 1> lo{}, hi{};
  std::array<std::array<std::int16_t, 64>, kMaxSearchRank> counts{};  // per-axis layer loads
  std::unordered_map<Key128, ClosureSummary, Key128Hash> closure_cache;
  std::ofstream records;
  std::set<long long> done_roots;
  std::uint64_t next_progress = 0;

  const SearchContext& ctx() const { return *shared->ctx; }
  const SearchOptions& opt() const { return *shared->opt; }
};

// Sound cutoffs from the layer theory: a single layer holds at most
// n/(d_nu+1) points, and two layers farther apart than d_nu hold at most
// n/(d_nu+1) points together.  Both hold for every exceptional sequence,
// so no maximal sequence is ever pruned.
bool placement_feasible(Shard& sh, int level, int cell) {
  const SearchContext& ctx = sh.ctx();
  for (int k = 0; k < ctx.rank; ++k) {
    std::int16_t c = ctx.coords_of[cell][k];
    std::int16_t nlo = std::min(sh.lo[level][k], c);
    std::int16_t nhi = std::max(sh.hi[level][k], c);
    if (nhi - nlo + 1 > ctx.grid.extents[k]) return false;
  }
  if (!sh.opt().structural_pruning) return true;
  for (int k = 0; k < ctx.rank; ++k) {
    std::int16_t c = ctx.coords_of[cell][k];
    int idx = c - static_cast<int>(ctx.box_lo[k]);
    long long cap = ctx.layer_cap[k];
    long long mine = sh.counts[k][idx] + 1;
    if (mine > cap) return false;
    int d_k = ctx.grid.d.entries[k];
    int from = sh.lo[level][k] - static_cast<int>(ctx.box_lo[k]);
    int to = sh.hi[level][k] - static_cast<int>(ctx.box_lo[k]);
    from = std::min(from, idx);
    to = std::max(to, idx);
    for (int j = from; j <= to; ++j) {
      if (std::abs(j - idx) <= d_k) continue;
      if (sh.counts[k][j] && sh.counts[k][j] + mine > cap) return false;
    }
  }
  return true;
}

void push_point(Shard& sh, int level, int cell) {
  const SearchContext& ctx = sh.ctx();
  sh.chosen[level] = cell;
  for (int k = 0; k < ctx.rank; ++k) {
    std::int16_t c = ctx.coords_of[cell][k];
    sh.lo[level + 1][k] = std::min(sh.lo[level][k], c);
    sh.hi[level + 1][k] = std::max(sh.hi[level][k], c);
    ++sh.counts[k][c - static_cast<int>(ctx.box_lo[k])];
  }
}

void pop_point(Shard& sh, int cell) {
  const SearchContext& ctx = sh.ctx();
  for (int k = 0; k < ctx.rank; ++k)
    --sh.counts[k][ctx.coords_of[cell][k] - static_cast<int>(ctx.box_lo[k])];
}

ClosureSummary cached_closure(Shard& sh, const ExcSeq& seq) {
  const SearchContext& ctx = sh.ctx();
  if (ctx.key_bits == 0)
    return closure_summary(seq.rank, seq.points, ctx.grid.d, sh.opt().round_cap);
  // The closure depends on the point set only; key on the sorted
  // normalized points so different orderings share one run.
  std::array<std::uint64_t, kMaxSeqLen> rows{};
  for (int i = 0; i < ctx.n; ++i) {
    std::uint64_t packed = 0;
    for (int k = ctx.rank - 1; k >= 0; --k)
      packed = (packed << ctx.key_bits) | static_cast<std::uint64_t>(seq.points[i][k]);
    rows[i] = packed;
  }
  std::sort(rows.begin(), rows.begin() + ctx.n);
  unsigned __int128 acc = 0;
  int bits_per_row = ctx.rank * ctx.key_bits;
  for (int i = 0; i < ctx.n; ++i)
    acc |= static_cast<unsigned __int128>(rows[i]) << (i * bits_per_row);
  Key128 key{static_cast<std::uint64_t>(acc), static_cast<std::uint64_t>(acc >> 64)};
  auto it = sh.closure_cache.find(key);
  if (it != sh.closure_cache.end()) return it->second;
  ClosureSummary s = closure_summary(seq.rank, seq.points, ctx.grid.d, sh.opt().round_cap);
  sh.closure_cache.emplace(key, s);
  return s;
}

void process_leaf(Shard& sh, int last_cell) {
  const SearchContext& ctx = sh.ctx();
  ++sh.agg.leaves;

  ExcSeq seq{ctx.rank, {}};
  seq.points.reserve(ctx.n);
  for (int i = 0; i < ctx.n; ++i) {
    int cell = i + 1 == ctx.n ? last_cell : sh.chosen[i];
    Point p(ctx.rank);
    for (int k = 0; k < ctx.rank; ++k)
      p[k] = ctx.coords_of[cell][k] - sh.lo[ctx.n][k];
    seq.points.push_back(std::move(p));
  }

  if (*sh.shared->filter && !(*sh.shared->filter)(seq)) return;
  ++sh.agg.emitted;

  if (sh.shared->verify) {
    ClosureSummary s = cached_closure(sh, seq);
    bool is_ones = ctx.grid.d.is_ones();
    if (s.status == ClosureStatus::full) {
      ++sh.agg.step_histogram[s.steps];
      sh.agg.max_steps = std::max(sh.agg.max_steps, s.steps);
    } else if (s.status == ClosureStatus::stable_not_full) {
      sh.agg.all_full = false;
      if (sh.agg.counterexamples.size() < kKeepExamples) sh.agg.counterexamples.push_back(seq);
    } else {
      // A capped closure leaves the verdict unknown; that must never
      // happen on a theorem run, so the whole search aborts early.
      sh.agg.all_full = false;
      if (sh.agg.unknowns.size() < kKeepExamples) sh.agg.unknowns.push_back(seq);
      sh.shared->cancel.store(true, std::memory_order_relaxed);
    }
    if (is_ones) {
      // Cross-check: a maximal layer admits the structural fullness
      // argument, which must agree with the closure whenever the closure
      // settled; a capped run decides nothing.
      if (has_maximal_layer(seq) && s.status != ClosureStatus::round_cap_reached) {
        if (thin_fullness(seq) != (s.status == ClosureStatus::full))
          throw std::logic_error("structural fullness disagrees with the closure");
      }
      sh.agg.distribution_histogram[distribution_tag(seq)] += 1;
      sh.agg.labeling_classes.insert(labeling_orbit_key(label(seq)));
      if (sh.opt().check_structure) {
        StructReport rep = check_structural_invariants(seq);
        if (!rep.all_pass) ++sh.agg.structure_failures;
      }
    }
    if (sh.records.is_open()) {
      nlohmann::json j;
      j["type"] = "seq";
      j["points"] = seq.points;
      j["status"] = s.status == ClosureStatus::full ? "full"
                    : s.status == ClosureStatus::stable_not_full ? "stable_not_full"
                                                                 : "round_cap_reached";
      if (s.status == ClosureStatus::full) j["steps"] = s.steps;
      sh.records << j.dump() << '\n';
    }
  } else if (sh.records.is_open()) {
    nlohmann::json j;
    j["type"] = "seq";
    j["points"] = seq.points;
    sh.records << j.dump() << '\n';
  }

  if (sh.opt().progress_every &&
      sh.agg.emitted >= sh.next_progress) {
    sh.next_progress = sh.agg.emitted + sh.opt().progress_every;
    std::fprintf(stderr, "[shard %d] %llu sequences, %llu nodes\n", sh.id,
                 static_cast<unsigned long long>(sh.agg.emitted),
                 static_cast<unsigned long long>(sh.agg.nodes));
  }

  if (*sh.shared->sink) {
    std::lock_guard<std::mutex> lock(sh.shared->sink_mutex);
    if (!(*sh.shared->sink)(seq)) sh.shared->cancel.store(true, std::memory_order_relaxed);
  }
}

void dfs(Shard& sh, int level) {
  const SearchContext& ctx = sh.ctx();
  const std::uint64_t* cand = sh.cand_stack.data() + static_cast<std::size_t>(level) * ctx.words;
  if (sh.shared->cancel.load(std::memory_order_relaxed)) return;

  int remaining = ctx.n - level;  // points still to place, including this one
  for (int w = 0; w < ctx.words; ++w) {
    std::uint64_t bits = cand[w];
    while (bits) {
      int q = w * 64 + std::countr_zero(bits);
      bits &= bits - 1;
      if (!placement_feasible(sh, level, q)) continue;
      ++sh.agg.nodes;
      if (remaining == 1) {
        push_point(sh, level, q);
        process_leaf(sh, q);
        pop_point(sh, q);
        continue;
      }
      std::uint64_t* next =
          sh.cand_stack.data() + static_cast<std::size_t>(level + 1) * ctx.words;
      const std::uint64_t* row = ctx.adm_row(q);
      int pop = 0;
      for (int v = 0; v < ctx.words; ++v) {
        next[v] = cand[v] & row[v];
        pop += std::popcount(next[v]);
      }
      if (pop < remaining - 1) continue;
      push_point(sh, level, q);
      dfs(sh, level + 1);
      pop_point(sh, q);
      if (sh.shared->cancel.load(std::memory_order_relaxed)) return;
    }
  }
}

void run_shard(Shard& sh) {
  const SearchContext& ctx = sh.ctx();
  const int shards = std::max(1, sh.opt().shards);

  sh.cand_stack.assign(static_cast<std::size_t>(ctx.n + 1) * ctx.words, 0);
  for (int k = 0; k < ctx.rank; ++k) {
    sh.lo[1][k] = sh.hi[1][k] = 0;
    ++sh.counts[k][-static_cast<int>(ctx.box_lo[k])];
  }
  sh.chosen[0] = ctx.origin;

  if (ctx.n == 1) {
    if (sh.id == 0) process_leaf(sh, ctx.origin);
    return;
  }

  // Candidate branches after the pinned origin, dealt round robin.
  const std::uint64_t* row0 = ctx.adm_row(ctx.origin);
  long long root_index = -1;
  for (int w = 0; w < ctx.words && !sh.shared->cancel.load(std::memory_order_relaxed); ++w) {
    std::uint64_t bits = row0[w];
    while (bits) {
      int q = w * 64 + std::countr_zero(bits);
      bits &= bits - 1;
      ++root_index;
      if (root_index % shards != sh.id) continue;
      if (sh.done_roots.count(root_index)) continue;
      if (!placement_feasible(sh, 1, q)) continue;
      ++sh.agg.nodes;
      if (ctx.n == 2) {
        push_point(sh, 1, q);
        process_leaf(sh, q);
        pop_point(sh, q);
      } else {
        std::uint64_t* next = sh.cand_stack.data() + static_cast<std::size_t>(2) * ctx.words;
        const std::uint64_t* row = ctx.adm_row(q);
        int pop = 0;
        for (int v = 0; v < ctx.words; ++v) {
          next[v] = row0[v] & row[v];
          pop += std::popcount(next[v]);
        }
        if (pop >= ctx.n - 2) {
          push_point(sh, 1, q);
          dfs(sh, 2);
          pop_point(sh, q);
        }
      }
      if (sh.records.is_open() && !sh.shared->cancel.load(std::memory_order_relaxed)) {
        nlohmann::json j;
        j["type"] = "root_done";
        j["root"] = root_index;
        sh.records << j.dump() << '\n';
        sh.records.flush();
      }
      if (sh.shared->cancel.load(std::memory_order_relaxed)) return;
    }
  }
}

std::string shard_records_path(const std::string& prefix, int id) {
  return prefix + ".shard" + std::to_string(id) + ".jsonl";
}

std::set<long long> read_done_roots(const std::string& path) {
  std::set<long long> done;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) continue;
    if (j.value("type", "") == "root_done") done.insert(j["root"].get<long long>());
  }
  return done;
}

SearchReport run_search(const GridSpec& grid, const SearchOptions& opt,
                        const EmitFilter& filter, const SeqSink& sink, bool verify,
                        Aggregate* aggregate_out = nullptr) {
  auto t0 = std::chrono::steady_clock::now();
  SearchContext ctx = build_context(grid);

  SharedState shared;
  shared.ctx = &ctx;
  shared.opt = &opt;
  shared.filter = &filter;
  shared.sink = &sink;
  shared.verify = verify;

  int shards = std::max(1, opt.shards);
  std::vector<Shard> workers(shards);
  for (int i = 0; i < shards; ++i) {
    workers[i].shared = &shared;
    workers[i].id = i;
    if (!opt.records_path.empty()) {
      std::string path = shard_records_path(opt.records_path, i);
      if (opt.resume) workers[i].done_roots = read_done_roots(path);
      workers[i].records.open(path, opt.resume ? std::ios::app : std::ios::trunc);
      if (!workers[i].records)
        throw std::runtime_error("cannot open records file " + path);
    }
  }

  if (shards == 1) {
    run_shard(workers[0]);
  } else {
    std::vector<std::thread> threads;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int i = 0; i < shards; ++i)
      threads.emplace_back([&, i] {
        try {
          run_shard(workers[i]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          shared.cancel.store(true, std::memory_order_relaxed);
        }
      });
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
  }

  Aggregate total;
  for (auto& w : workers) total.merge(std::move(w.agg));
  auto seq_less = [](const ExcSeq& a, const ExcSeq& b) { return a.points < b.points; };
  std::sort(total.counterexamples.begin(), total.counterexamples.end(), seq_less);
  std::sort(total.unknowns.begin(), total.unknowns.end(), seq_less);
  if (total.counterexamples.size() > kKeepExamples) total.counterexamples.resize(kKeepExamples);
  if (total.unknowns.size() > kKeepExamples) total.unknowns.resize(kKeepExamples);

  SearchReport rep;
  rep.nodes_visited = total.nodes;
  rep.leaves_found = total.leaves;
  rep.sequences_found = total.emitted;
  rep.all_full = total.all_full;
  rep.max_steps = total.max_steps;
  rep.step_histogram = total.step_histogram;
  rep.distribution_histogram = total.distribution_histogram;
  rep.labeling_classes_observed = total.labeling_classes.size();
  rep.structure_failures = total.structure_failures;
  rep.counterexamples = total.counterexamples;
  rep.unknowns = total.unknowns;
  rep.shards_used = shards;
  rep.cancelled = shared.cancel.load();
  rep.verified = verify;
  rep.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (aggregate_out) *aggregate_out = std::move(total);
  return rep;
}

EmitFilter default_filter(const GridSpec& grid) {
  return dedupe_canonical(SymmetryGroup::shape_preserving(grid.extents));
}

}  // namespace

SearchReport enumerate_mes(const GridSpec& grid, const SearchOptions& opt,
                           const SeqSink& sink, const EmitFilter& filter) {
  return run_search(grid, opt, filter ? filter : default_filter(grid), sink, false);
}

SearchReport verify_fullness_report(const GridSpec& grid, const SearchOptions& opt,
                                    const EmitFilter& filter, const SeqSink& sink) {
  return run_search(grid, opt, filter ? filter : default_filter(grid), sink, true);
}

namespace {

bool fits_extents(const std::vector<Coord>& w, const std::vector<Coord>& caps) {
  for (std::size_t k = 0; k < w.size(); ++k)
    if (w[k] > caps[k]) return false;
  return true;
}

// Least orbit member under all axis permutations that fits `caps`,
// among translated-to-origin images.
std::optional<std::vector<Point>> least_fitting(const ExcSeq& seq,
                                                const std::vector<Coord>& caps) {
  std::optional<std::vector<Point>> best;
  SymmetryGroup all = SymmetryGroup::translations_permutations(seq.rank);
  for (const auto& perm : all.perms) {
    ExcSeq img = translated_to_origin(apply_symmetry(seq, SymmetryOp::permutation(perm)));
    if (!fits_extents(widths(img), caps)) continue;
    if (!best || img.points < *best) best = img.points;
  }
  return best;
}

}  // namespace

std::vector<std::string> theorem_profiles() {
  return {"smoke_2d_5x5", "smoke_3d_3cube", "smoke_3d_4cube",
          "grid_6_6_11",  "grid_6_9_9",     "full_theorem"};
}

TheoremOutcome theorem_run(const std::string& profile, const SearchOptions& opt) {
  TheoremOutcome out;
  out.profile = profile;

  if (profile == "full_theorem") {
    // Two oriented runs covering, between them, every orbit under
    // translations and all axis permutations exactly once.
    std::vector<Coord> caps_a{6, 6, 11}, caps_b{6, 9, 9};
    EmitFilter filter_a = [caps_a](const ExcSeq& seq) {
      ExcSeq norm = translated_to_origin(seq);
      auto best = least_fitting(norm, caps_a);
      return best && *best == norm.points;
    };
    EmitFilter filter_b = [caps_a, caps_b](const ExcSeq& seq) {
      ExcSeq norm = translated_to_origin(seq);
      if (least_fitting(norm, caps_a)) return false;
      auto best = least_fitting(norm, caps_b);
      return best && *best == norm.points;
    };
    out.grids = {GridSpec::ones_grid(caps_a), GridSpec::ones_grid(caps_b)};
    // The labeling-class union needs the sets, not the per-run counts.
    Aggregate agg_a, agg_b;
    out.per_grid.push_back(run_search(out.grids[0], opt, filter_a, {}, true, &agg_a));
    out.per_grid.push_back(run_search(out.grids[1], opt, filter_b, {}, true, &agg_b));
    out.combined = out.per_grid[0];
    const SearchReport& b = out.per_grid[1];
    out.combined.nodes_visited += b.nodes_visited;
    out.combined.leaves_found += b.leaves_found;
    out.combined.sequences_found += b.sequences_found;
    out.combined.all_full = out.combined.all_full && b.all_full;
    out.combined.max_steps = std::max(out.combined.max_steps, b.max_steps);
    for (auto& [k, v] : b.step_histogram) out.combined.step_histogram[k] += v;
    for (auto& [k, v] : b.distribution_histogram) out.combined.distribution_histogram[k] += v;
    agg_a.labeling_classes.merge(agg_b.labeling_classes);
    out.combined.labeling_classes_observed = agg_a.labeling_classes.size();
    out.combined.structure_failures += b.structure_failures;
    for (auto& s : b.counterexamples) out.combined.counterexamples.push_back(s);
    for (auto& s : b.unknowns) out.combined.unknowns.push_back(s);
    out.combined.runtime_seconds += b.runtime_seconds;
    out.combined.cancelled = out.combined.cancelled || b.cancelled;
    return out;
  }

  GridSpec grid;
  if (profile == "smoke_2d_5x5") grid = GridSpec::ones_grid({5, 5});
  else if (profile == "smoke_3d_3cube") grid = GridSpec::ones_grid({3, 3, 3});
  else if (profile == "smoke_3d_4cube") grid = GridSpec::ones_grid({4, 4, 4});
  else if (profile == "grid_6_6_11") grid = GridSpec::ones_grid({6, 6, 11});
  else if (profile == "grid_6_9_9") grid = GridSpec::ones_grid({6, 9, 9});
  else throw std::invalid_argument("unknown profile: " + profile);

  out.grids = {grid};
  out.per_grid.push_back(verify_fullness_report(grid, opt));
  out.combined = out.per_grid[0];
  return out;
}

}  // namespace fes
