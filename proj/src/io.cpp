#include "fes/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "fes/structure.hpp"

namespace fes {

namespace {

using nlohmann::json;

Point point_from_json(const json& j, int rank) {
  if (!j.is_array() || static_cast<int>(j.size()) != rank)
    throw std::invalid_argument("point arity does not match rank");
  Point p(rank);
  for (int k = 0; k < rank; ++k) {
    if (!j[k].is_number_integer())
      throw std::invalid_argument("point coordinates must be integers");
    p[k] = j[k].get<Coord>();
  }
  return p;
}

std::string status_name(ClosureStatus s) {
  switch (s) {
    case ClosureStatus::full: return "full";
    case ClosureStatus::stable_not_full: return "stable_not_full";
    case ClosureStatus::round_cap_reached: return "round_cap_reached";
  }
  return "unknown";
}

}  // namespace

nlohmann::json sequence_to_json(const ExcSeq& seq, const DimVec& d) {
  json j;
  j["rank"] = seq.rank;
  if (!d.is_ones()) j["d"] = d.entries;
  j["points"] = seq.points;
  return j;
}

SequenceFile sequence_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("sequence file must be a JSON object");
  if (!j.contains("points") || !j["points"].is_array())
    throw std::invalid_argument("sequence file needs a \"points\" array");
  const json& pts = j["points"];

  int rank;
  if (j.contains("rank")) {
    if (!j["rank"].is_number_integer() || j["rank"].get<long long>() < 1 ||
        j["rank"].get<long long>() > kMaxClosureRank)
      throw std::invalid_argument("rank out of range");
    rank = j["rank"].get<int>();
  } else if (!pts.empty() && pts[0].is_array()) {
    rank = static_cast<int>(pts[0].size());
    if (rank < 1 || rank > kMaxClosureRank) throw std::invalid_argument("rank out of range");
  } else {
    throw std::invalid_argument("sequence file needs \"rank\" or a nonempty \"points\"");
  }

  SequenceFile f;
  f.seq.rank = rank;
  f.seq.points.reserve(pts.size());
  for (const json& p : pts) f.seq.points.push_back(point_from_json(p, rank));

  if (j.contains("d")) {
    const json& jd = j["d"];
    if (!jd.is_array() || static_cast<int>(jd.size()) != rank)
      throw std::invalid_argument("\"d\" arity does not match rank");
    f.d.entries.clear();
    for (const json& e : jd) {
      if (!e.is_number_integer() || e.get<long long>() < 1 || e.get<long long>() > 64)
        throw std::invalid_argument("\"d\" entries must be integers in [1, 64]");
      f.d.entries.push_back(e.get<int>());
    }
  } else {
    f.d = DimVec::ones(rank);
  }
  return f;
}

SequenceFile load_sequence(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("invalid JSON in " + path);
  return sequence_from_json(j);
}

void save_sequence(const std::string& path, const ExcSeq& seq, const DimVec& d) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
  out << sequence_to_json(seq, d).dump(2) << '\n';
}

nlohmann::json verdict_to_json(const ExcSeq& seq, const DimVec& d,
                               const ExcVerdict& v) {
  json j;
  j["exceptional"] = v.exceptional;
  j["maximal"] = v.maximal;
  j["length"] = seq.size();
  j["max_length"] = d.max_length();
  json viol = json::array();
  for (auto [a, b] : v.violations) viol.push_back({a, b});
  j["violations"] = viol;
  if (!seq.points.empty()) {
    j["widths"] = widths(seq);
    json loads = json::array();
    for (int k = 0; k < seq.rank; ++k) {
      LayerProfile prof = layer_loads(seq, k);
      json axis;
      axis["axis"] = k + 1;
      axis["first_layer"] = prof.lo;
      axis["loads"] = prof.loads;
      loads.push_back(axis);
    }
    j["layer_loads"] = loads;
  }
  return j;
}

nlohmann::json closure_to_json(const ClosureResult& res) {
  json j;
  j["full"] = res.status == ClosureStatus::full;
  j["status"] = status_name(res.status);
  j["steps"] = res.steps;
  json per_round = json::array();
  for (const FlatSet& u : res.history) per_round.push_back(u.flats.size());
  j["flats_per_round"] = per_round;
  return j;
}

namespace {

nlohmann::json binary_strings(const CubeLabeling& lab) {
  json bits = json::array();
  for (std::uint32_t m : lab.labels) {
    std::string s(lab.rank, '0');
    for (int k = 0; k < lab.rank; ++k)
      if (m >> k & 1) s[k] = '1';
    bits.push_back(s);
  }
  return bits;
}

}  // namespace

nlohmann::json labeling_to_json(const CubeLabeling& lab) {
  CubeLabeling norm = normalize_labeling(lab);
  json j;
  j["rank"] = lab.rank;
  j["labels"] = lab.labels;
  j["labels_binary"] = binary_strings(lab);
  j["normalized"] = norm.labels;
  j["normalized_binary"] = binary_strings(norm);
  j["orbit_key"] = labeling_orbit_key(lab);
  return j;
}

nlohmann::json options_to_json(const SearchOptions& opt) {
  json j;
  j["shards"] = opt.shards;
  j["structural_pruning"] = opt.structural_pruning;
  j["check_structure"] = opt.check_structure;
  j["round_cap"] = opt.round_cap;
  return j;
}

nlohmann::json report_to_json(const SearchReport& rep) {
  json j;
  j["nodes_visited"] = rep.nodes_visited;
  j["leaves_found"] = rep.leaves_found;
  j["sequences_found"] = rep.sequences_found;
  j["verified"] = rep.verified;
  j["all_full"] = rep.all_full;
  j["max_steps"] = rep.max_steps;
  json steps = json::object();
  for (auto& [k, v] : rep.step_histogram) steps[std::to_string(k)] = v;
  j["step_histogram"] = steps;
  j["distribution_histogram"] = rep.distribution_histogram;
  j["labeling_classes_observed"] = rep.labeling_classes_observed;
  j["structure_failures"] = rep.structure_failures;
  json cex = json::array();
  for (const ExcSeq& s : rep.counterexamples) cex.push_back(s.points);
  j["counterexamples"] = cex;
  json unk = json::array();
  for (const ExcSeq& s : rep.unknowns) unk.push_back(s.points);
  j["unknowns"] = unk;
  j["runtime_seconds"] = rep.runtime_seconds;
  j["shards_used"] = rep.shards_used;
  j["cancelled"] = rep.cancelled;
  return j;
}

nlohmann::json outcome_to_json(const TheoremOutcome& out, const SearchOptions& opt) {
  json j;
  j["schema_version"] = 1;
  j["tool_version"] = "0.1.0";
  j["profile"] = out.profile;
  j["options"] = options_to_json(opt);
  json grids = json::array();
  for (const GridSpec& g : out.grids) {
    json jg;
    jg["extents"] = g.extents;
    jg["d"] = g.d.entries;
    grids.push_back(jg);
  }
  j["grids"] = grids;
  json per = json::array();
  for (const SearchReport& r : out.per_grid) per.push_back(report_to_json(r));
  j["per_grid"] = per;
  j["combined"] = report_to_json(out.combined);
  return j;
}

nlohmann::json frame_to_json(const FlatSet& u, int round, const Window& window) {
  int rank = u.rank;
  if (window.rank() != rank)
    throw std::invalid_argument("window arity does not match rank");
  json j;
  j["round"] = round;
  j["lo"] = window.lo;
  j["hi"] = window.hi;

  json flats = json::array();
  for (const Flat& f : u.flats) {
    json jf;
    jf["base"] = f.base;
    json free_axes = json::array();
    for (int k = 0; k < rank; ++k)
      if (f.free >> k & 1) free_axes.push_back(k + 1);
    jf["free"] = free_axes;
    flats.push_back(jf);
  }
  j["flats"] = flats;

  if (rank <= 3) {
    WindowGrid grid = window_raster(u, window);
    j["infected"] = grid.count();

    auto row_string = [&](Coord y, Coord z) {
      std::string s;
      for (Coord x = window.lo[0]; x <= window.hi[0]; ++x) {
        Point p{x};
        if (rank >= 2) p.push_back(y);
        if (rank >= 3) p.push_back(z);
        s.push_back(grid.at(p) ? '#' : '.');
      }
      return s;
    };

    if (rank == 1) {
      j["raster"] = row_string(0, 0);
    } else if (rank == 2) {
      json rows = json::array();
      for (Coord y = window.lo[1]; y <= window.hi[1]; ++y) rows.push_back(row_string(y, 0));
      j["rows"] = rows;
    } else {
      json slices = json::array();
      for (Coord z = window.lo[2]; z <= window.hi[2]; ++z) {
        json slice;
        slice["coord"] = z;
        json rows = json::array();
        for (Coord y = window.lo[1]; y <= window.hi[1]; ++y) rows.push_back(row_string(y, z));
        slice["rows"] = rows;
        slices.push_back(slice);
      }
      j["slices"] = slices;
    }
  }
  return j;
}

void write_frames(std::ostream& os, const ClosureResult& res, const Window& window) {
  for (std::size_t t = 0; t < res.history.size(); ++t)
    os << frame_to_json(res.history[t], static_cast<int>(t), window).dump() << '\n';
}

namespace {

std::vector<Coord> parse_coord_list(const std::string& text, char sep) {
  std::vector<Coord> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    std::size_t pos = 0;
    long long v;
    try {
      v = std::stoll(item, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("not an integer: \"" + item + "\"");
    }
    if (pos != item.size()) throw std::invalid_argument("not an integer: \"" + item + "\"");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty coordinate list");
  return out;
}

}  // namespace

Point parse_point(const std::string& text) { return parse_coord_list(text, ','); }

Window parse_window(const std::string& text) {
  std::size_t colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("window must look like lo1,lo2:hi1,hi2");
  Window w;
  w.lo = parse_coord_list(text.substr(0, colon), ',');
  w.hi = parse_coord_list(text.substr(colon + 1), ',');
  if (w.lo.size() != w.hi.size())
    throw std::invalid_argument("window corners have different arities");
  for (std::size_t k = 0; k < w.lo.size(); ++k)
    if (w.lo[k] > w.hi[k]) throw std::invalid_argument("window corner order is reversed");
  return w;
}

std::vector<Coord> parse_extents(const std::string& text) {
  std::vector<Coord> e = parse_coord_list(text, 'x');
  for (Coord v : e)
    if (v < 1) throw std::invalid_argument("extents must be positive");
  return e;
}

}  // namespace fes
