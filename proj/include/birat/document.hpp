#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "birat/ring.hpp"
#include "json.hpp"

namespace birat {

// A map description as read from a file or stdin.  Two equivalent formats,
// auto-detected by a leading '{':
//
//   [ring]
//   blocks = x10 x11 | x20 x21     # one block per projective factor
//   field = QQ                     # or: GF 101
//   relation.0 = x10^2 - x11^2     # optional, repeatable; index = block
//   [forms]
//   f = x10*x20                    # repeatable, order preserved
//   f = x11*x20
//   [options]
//   nmax = 6
//   prime = 101
//   seed = 20260814
//
// or JSON with the same names:
//   {"blocks": [["x10","x11"],["x20","x21"]], "field": "QQ",
//    "relations": [[],[]], "forms": ["x10*x20", ...],
//    "options": {"nmax": 6, "prime": 101, "seed": 20260814}}
struct MapDocument {
  std::vector<std::vector<std::string>> blocks;
  std::string field = "QQ";
  std::vector<std::vector<std::string>> relations;  // empty, or one per block
  std::vector<std::string> forms;
  int n_max = 6;
  long prime = 101;
  std::uint64_t seed = 20260814u;
};

// Throw ParseError on malformed text; document_map additionally re-raises
// ring/form construction failures as ParseError, since a document that does
// not build a rational map is invalid input rather than a failed analysis.
MapDocument parse_document(const std::string& text);
MapDocument load_document(const std::string& path);
RationalMap document_map(const MapDocument& doc);

struct RunOptions {
  std::string route = "auto";  // auto|jacdual|monomial|plane|limit|formula
  int n_max = 0;               // > 0 overrides the document value
  long prime = 0;              // > 0 overrides
  std::int64_t seed = -1;      // >= 0 overrides
  int cap_ydeg = -1;           // >= 0 caps jacobian-dual y-degrees
};

// Execute one analysis command against a parsed document and return the
// report.  Key order is fixed and values are exact (no floats, no
// timestamps), so identical input + options give byte-identical dumps.
// Commands: degree, birational, inverse, rees, sym, sylvester, saturate,
// hilbert, bounds, oracle, syzygies.
nlohmann::ordered_json run_command(const std::string& command,
                                   const MapDocument& doc,
                                   const RunOptions& opts = {});

// Flat indented rendering of a report for terminal output.
std::string render_text(const nlohmann::ordered_json& report);

// Process exit code for a failed run: 2 parse, 3 hypothesis violated,
// 4 fit/verdict did not stabilize, 5 methods disagreed; 1 otherwise.
int exit_code_for(const std::exception& e);

}  // namespace birat
