// Command line front end: verdicts, contamination runs, grid enumeration,
// cube labelings, and the bundled example sequences.
//
// Exit codes: 0 success (exceptional / full / all full), 1 negative result
// (not exceptional / stable but not full / labeling rejected), 2 malformed
// input, 3 round cap hit, 4 counterexample found, 5 internal error.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fes/catalog.hpp"
#include "fes/core.hpp"
#include "fes/flats.hpp"
#include "fes/io.hpp"
#include "fes/search.hpp"
#include "fes/simulate.hpp"
#include "fes/structure.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitMalformed = 2;
constexpr int kExitRoundCap = 3;
constexpr int kExitCounterexample = 4;
constexpr int kExitInternal = 5;

fes::SequenceFile read_sequence(const std::string& path) {
  if (path == "-") {
    nlohmann::json j = nlohmann::json::parse(std::cin, nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument("invalid JSON on stdin");
    return fes::sequence_from_json(j);
  }
  return fes::load_sequence(path);
}

void emit(const nlohmann::json& j, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot open " + out_path + " for writing");
  out << j.dump(2) << '\n';
}

int run_check(const std::string& input, const std::string& out_path) {
  fes::SequenceFile f = read_sequence(input);
  fes::validate(f.seq, f.d);
  fes::ExcVerdict v = fes::is_exceptional(f.seq, f.d);
  emit(fes::verdict_to_json(f.seq, f.d, v), out_path);
  return v.exceptional ? kExitOk : kExitNegative;
}

int run_contaminate(const std::string& input, const std::string& window_text,
                    const std::string& frames_path, int cap,
                    const std::string& out_path) {
  fes::SequenceFile f = read_sequence(input);
  fes::validate(f.seq, f.d);

  fes::ClosureResult res = fes::closure(f.seq.rank, f.seq.points, f.d, cap);
  nlohmann::json j = fes::closure_to_json(res);

  if (!frames_path.empty()) {
    fes::Window w = window_text.empty()
                        ? fes::bbox_window(f.seq.rank, f.seq.points, 1)
                        : fes::parse_window(window_text);
    if (w.rank() != f.seq.rank)
      throw std::invalid_argument("window arity does not match rank");
    std::ofstream out(frames_path);
    if (!out) throw std::invalid_argument("cannot open " + frames_path + " for writing");
    fes::write_frames(out, res, w);
    j["frames_written"] = res.history.size();
    j["window"] = {{"lo", w.lo}, {"hi", w.hi}};
  }

  emit(j, out_path);
  switch (res.status) {
    case fes::ClosureStatus::full: return kExitOk;
    case fes::ClosureStatus::stable_not_full: return kExitNegative;
    case fes::ClosureStatus::round_cap_reached: return kExitRoundCap;
  }
  return kExitInternal;
}

int run_enumerate(const std::string& profile, const std::string& grid_text,
                  const fes::SearchOptions& opt, const std::string& out_path) {
  fes::TheoremOutcome out;
  if (!profile.empty()) {
    out = fes::theorem_run(profile, opt);
  } else {
    fes::GridSpec grid = fes::GridSpec::ones_grid(fes::parse_extents(grid_text));
    out.profile = "grid";
    out.grids = {grid};
    out.per_grid.push_back(fes::verify_fullness_report(grid, opt));
    out.combined = out.per_grid[0];
  }
  emit(fes::outcome_to_json(out, opt), out_path);
  if (!out.combined.counterexamples.empty()) return kExitCounterexample;
  if (!out.combined.unknowns.empty() || out.combined.cancelled) return kExitRoundCap;
  if (!out.combined.all_full) return kExitCounterexample;
  return kExitOk;
}

int run_label(const std::string& input, const std::string& out_path) {
  fes::SequenceFile f = read_sequence(input);
  fes::validate(f.seq, f.d);
  fes::CubeLabeling lab;
  try {
    lab = fes::label(f.seq);
  } catch (const std::invalid_argument& e) {
    std::cerr << "label: " << e.what() << '\n';
    return kExitNegative;
  }
  emit(fes::labeling_to_json(lab), out_path);
  return kExitOk;
}

int run_examples(const std::string& which, long long n, const std::string& out_path) {
  if (which.empty()) {
    nlohmann::json list = nlohmann::json::array();
    for (const std::string& name : fes::catalog_names()) {
      fes::CatalogEntry e = fes::catalog_get(name, name == "stretch" ? 1 : 0);
      nlohmann::json row;
      row["name"] = e.name;
      row["summary"] = e.summary;
      row["length"] = e.seq.size();
      row["rank"] = e.seq.rank;
      row["exceptional_order"] = e.exceptional_order;
      list.push_back(row);
    }
    emit(list, out_path);
    return kExitOk;
  }
  fes::CatalogEntry e = fes::catalog_get(which, n);
  nlohmann::json j = fes::sequence_to_json(e.seq, fes::DimVec::ones(e.seq.rank));
  j["name"] = e.name;
  j["summary"] = e.summary;
  j["exceptional_order"] = e.exceptional_order;
  emit(j, out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exceptional sequences of lattice points and their contamination closure"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string out_path;
  std::string window_text, frames_path;
  int cap = fes::kDefaultRoundCap;
  std::string profile, grid_text;
  fes::SearchOptions opt;
  bool no_prune = false;
  std::string which;
  long long n = 0;

  CLI::App* check = app.add_subcommand(
      "check", "Decide whether an ordered point list is exceptional");
  check->add_option("input", input, "Sequence file (JSON), or - for stdin");
  check->add_option("-o,--out", out_path, "Write the verdict JSON here");

  CLI::App* cont = app.add_subcommand(
      "contaminate", "Run the contamination closure of a point set");
  cont->add_option("input", input, "Sequence file (JSON), or - for stdin");
  cont->add_option("--window", window_text,
                   "Window lo1,lo2,..:hi1,hi2,.. for rendered frames");
  cont->add_option("--frames", frames_path,
                   "Write one JSON frame per round to this file: the flat "
                   "union plus (rank <= 3) a window raster; the window "
                   "defaults to the bounding box plus 1");
  cont->add_option("--max-rounds", cap, "Round cap before giving up");
  cont->add_option("-o,--out", out_path, "Write the closure JSON here");

  CLI::App* enumerate = app.add_subcommand(
      "enumerate", "Enumerate maximal sequences over a grid and verify fullness");
  enumerate->add_option("--profile", profile,
                        "Named run: smoke_2d_5x5, smoke_3d_3cube, smoke_3d_4cube, "
                        "grid_6_6_11, grid_6_9_9, full_theorem");
  enumerate->add_option("--grid", grid_text, "Explicit extents, e.g. 6x6x11");
  enumerate->add_option("--shards", opt.shards, "Worker threads")
      ->envname("FES_SHARDS");
  enumerate->add_flag("--no-prune", no_prune, "Disable the layer-load cutoffs");
  enumerate->add_flag("--check-structure", opt.check_structure,
                      "Run the full structural invariant suite per sequence");
  enumerate->add_option("--records", opt.records_path,
                        "JSONL stream prefix for per-shard records");
  enumerate->add_flag("--resume", opt.resume,
                      "Skip first-point branches already marked done in the records");
  enumerate->add_option("--progress", opt.progress_every,
                        "Heartbeat to stderr every N emitted sequences");
  enumerate->add_option("--max-rounds", opt.round_cap, "Round cap per closure");
  enumerate->add_option("-o,--out", out_path, "Write the report JSON here");

  CLI::App* label_cmd = app.add_subcommand(
      "label", "Compute the mod-2 cube labeling of a maximal sequence");
  label_cmd->add_option("input", input, "Sequence file (JSON), or - for stdin");
  label_cmd->add_option("-o,--out", out_path, "Write the labeling JSON here");

  CLI::App* examples = app.add_subcommand(
      "examples", "List bundled sequences, or export one as a sequence file");
  examples->add_option("--which", which, "Name of the example to export");
  examples->add_option("--n", n,
                       "Parameter for the parametric families "
                       "(stretch: layer span; standard: rank)");
  examples->add_option("-o,--out", out_path, "Write the JSON here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return run_check(input, out_path);
    if (cont->parsed()) return run_contaminate(input, window_text, frames_path, cap, out_path);
    if (enumerate->parsed()) {
      if (profile.empty() == grid_text.empty()) {
        std::cerr << "enumerate: give exactly one of --profile or --grid\n";
        return kExitMalformed;
      }
      opt.structural_pruning = !no_prune;
      return run_enumerate(profile, grid_text, opt, out_path);
    }
    if (label_cmd->parsed()) return run_label(input, out_path);
    if (examples->parsed()) return run_examples(which, n, out_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const fes::RoundCapReached& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRoundCap;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
