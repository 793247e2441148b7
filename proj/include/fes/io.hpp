// JSON formats for sequences, verdicts, closures, search reports, and the
// per-round frame stream of a contamination run.
//
// A sequence file is {"rank": r, "points": [[..], ...]} with an optional
// "d" array (default all ones).  A frame holds the round index, the flat
// union as {base, free} records (free axes 1-based), and for rank <= 3 a
// window raster: '#' for infected cells and '.' otherwise, rows ordered
// by increasing second coordinate and slices by increasing third.
#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "fes/core.hpp"
#include "fes/flats.hpp"
#include "fes/search.hpp"
#include "fes/simulate.hpp"

namespace fes {

struct SequenceFile {
  ExcSeq seq;
  DimVec d;
};

nlohmann::json sequence_to_json(const ExcSeq& seq, const DimVec& d);
// Throws std::invalid_argument on malformed input.
SequenceFile sequence_from_json(const nlohmann::json& j);
SequenceFile load_sequence(const std::string& path);
void save_sequence(const std::string& path, const ExcSeq& seq, const DimVec& d);

nlohmann::json verdict_to_json(const ExcSeq& seq, const DimVec& d,
                               const ExcVerdict& v);
nlohmann::json closure_to_json(const ClosureResult& res);
nlohmann::json labeling_to_json(const CubeLabeling& lab);

nlohmann::json options_to_json(const SearchOptions& opt);
nlohmann::json report_to_json(const SearchReport& rep);
nlohmann::json outcome_to_json(const TheoremOutcome& out, const SearchOptions& opt);

// One frame per closure round; the raster is included for rank <= 3.
nlohmann::json frame_to_json(const FlatSet& u, int round, const Window& window);
void write_frames(std::ostream& os, const ClosureResult& res, const Window& window);

// "a,b,c" -> point; "a,b,c:d,e,f" -> window; "6x6x11" -> extents.
// All throw std::invalid_argument on malformed text.
Point parse_point(const std::string& text);
Window parse_window(const std::string& text);
std::vector<Coord> parse_extents(const std::string& text);

}  // namespace fes
