#include "birat/document.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "birat/birational.hpp"
#include "birat/blowup.hpp"
#include "birat/degree.hpp"
#include "birat/errors.hpp"
#include "birat/monomial.hpp"
#include "birat/plane.hpp"

namespace birat {

using nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Document parsing
// ---------------------------------------------------------------------------

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

long parse_long(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("invalid integer for " + what + ": '" + s + "'");
  }
}

MapDocument parse_ini(const std::string& text) {
  MapDocument doc;
  bool saw_blocks = false;
  std::vector<std::pair<int, std::string>> relations;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']')
        throw ParseError("line " + std::to_string(lineno) +
                         ": unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section != "ring" && section != "forms" && section != "options")
        throw ParseError("line " + std::to_string(lineno) +
                         ": unknown section [" + section + "]");
      continue;
    }
    size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected key = value");
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (section == "ring") {
      if (key == "blocks") {
        saw_blocks = true;
        std::string cur;
        std::istringstream bs(value);
        std::string piece;
        while (std::getline(bs, piece, '|')) {
          auto names = split_ws(piece);
          if (names.empty())
            throw ParseError("line " + std::to_string(lineno) +
                             ": empty variable block");
          doc.blocks.push_back(std::move(names));
        }
      } else if (key == "field") {
        doc.field = value;
      } else if (key.rfind("relation.", 0) == 0) {
        relations.emplace_back(
            static_cast<int>(parse_long(key.substr(9), key)), value);
      } else {
        throw ParseError("line " + std::to_string(lineno) +
                         ": unknown ring key '" + key + "'");
      }
    } else if (section == "forms") {
      if (key != "f")
        throw ParseError("line " + std::to_string(lineno) +
                         ": unknown forms key '" + key + "'");
      doc.forms.push_back(value);
    } else if (section == "options") {
      if (key == "nmax")
        doc.n_max = static_cast<int>(parse_long(value, key));
      else if (key == "prime")
        doc.prime = parse_long(value, key);
      else if (key == "seed")
        doc.seed = static_cast<std::uint64_t>(parse_long(value, key));
      else
        throw ParseError("line " + std::to_string(lineno) +
                         ": unknown option '" + key + "'");
    } else {
      throw ParseError("line " + std::to_string(lineno) +
                       ": key outside any section");
    }
  }
  if (!saw_blocks) throw ParseError("document has no 'blocks' entry");
  if (!relations.empty()) {
    doc.relations.assign(doc.blocks.size(), {});
    for (auto& [b, rel] : relations) {
      if (b < 0 || b >= static_cast<int>(doc.blocks.size()))
        throw ParseError("relation." + std::to_string(b) +
                         " does not name a block");
      doc.relations[b].push_back(rel);
    }
  }
  return doc;
}

MapDocument parse_json_doc(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON document: ") + e.what());
  }
  MapDocument doc;
  try {
    if (!j.contains("blocks")) throw ParseError("document has no 'blocks'");
    doc.blocks = j.at("blocks").get<std::vector<std::vector<std::string>>>();
    if (j.contains("field")) doc.field = j.at("field").get<std::string>();
    if (j.contains("relations"))
      doc.relations =
          j.at("relations").get<std::vector<std::vector<std::string>>>();
    if (j.contains("forms"))
      doc.forms = j.at("forms").get<std::vector<std::string>>();
    if (j.contains("options")) {
      const auto& o = j.at("options");
      if (o.contains("nmax")) doc.n_max = o.at("nmax").get<int>();
      if (o.contains("prime")) doc.prime = o.at("prime").get<long>();
      if (o.contains("seed")) doc.seed = o.at("seed").get<std::uint64_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON document: ") + e.what());
  }
  // Relations must be absent or one list per block.
  if (!doc.relations.empty() && doc.relations.size() != doc.blocks.size())
    throw ParseError("'relations' must list one entry per block");
  return doc;
}

Field parse_field(const std::string& text) {
  if (text == "QQ") return Field::rationals();
  auto toks = split_ws(text);
  if (toks.size() == 2 && toks[0] == "GF") {
    long p = parse_long(toks[1], "field characteristic");
    try {
      return Field::prime(p);
    } catch (const std::exception& e) {
      throw ParseError(std::string("invalid field: ") + e.what());
    }
  }
  throw ParseError("invalid field '" + text + "' (expected QQ or GF <p>)");
}

// ---------------------------------------------------------------------------
// Report helpers
// ---------------------------------------------------------------------------

ordered_json gen_list(const BigradedIdeal& B) {
  ordered_json out = ordered_json::array();
  for (const auto& g : B.gens) {
    ordered_json e;
    e["poly"] = to_string(g.poly);
    e["xdeg"] = g.xdeg.v;
    e["ydeg"] = g.ydeg;
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<std::string> poly_strings(const std::vector<MultiPoly>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(to_string(p));
  return out;
}

// The monomial lattice criterion works on sources that are products of
// projective lines, so the shape test matches that hypothesis.
bool monomial_shape(const RationalMap& F) {
  if (F.source.has_relations()) return false;
  const Ring& r = *F.source.ring;
  for (int b = 0; b < r.n_blocks(); ++b)
    if (r.block_size(b) != 2) return false;
  for (const auto& f : F.forms)
    if (!f.is_monomial()) return false;
  return true;
}

bool plane_shape(const RationalMap& F) {
  return F.source.ring->n_blocks() == 1 && F.source.ring->n_vars() == 3 &&
         F.forms.size() == 3 && !F.source.has_relations();
}

bool p1p1_shape(const RationalMap& F) {
  const Ring& r = *F.source.ring;
  return r.n_blocks() == 2 && r.block_size(0) == 2 && r.block_size(1) == 2 &&
         F.forms.size() == 3 && !F.source.has_relations();
}

bool normalized_shape(const HilbertBurchData& hb) {
  const RingPtr& r = hb.desc.ring;
  return hb.phi[0][0] == MultiPoly::variable(r, 0) &&
         hb.phi[1][0] == -MultiPoly::variable(r, 1) && hb.phi[2][0].is_zero();
}

struct Effective {
  int n_max;
  long prime;
  std::uint64_t seed;
};

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

void run_degree(ordered_json& rep, const RationalMap& F,
                const std::string& route, const Effective& eff, bool exact) {
  ordered_json methods;
  long agreed = -1;
  auto record = [&](long v, const char* name) {
    if (agreed < 0)
      agreed = v;
    else if (agreed != v)
      throw InconsistencyError(std::string("degree methods disagree: ") +
                               name + " found " + std::to_string(v) +
                               " against " + std::to_string(agreed));
  };
  if (route == "auto" || route == "limit") {
    DegreeReport r = degree_via_limit(F, eff.n_max);
    ordered_json m;
    m["degree"] = r.deg_F;
    m["image_dim"] = r.dim_Y;
    m["image_degree"] = r.deg_Y;
    if (!r.note.empty()) m["note"] = r.note;
    methods["limit"] = std::move(m);
    record(r.deg_F, "limit");
  }
  if (route == "auto" || route == "formula") {
    bool applies = true;
    if (route == "auto") {
      BaseLocusReport blr = base_locus_report(F, eff.n_max);
      ordered_json bl;
      bl["dim"] = blr.dim_B;
      bl["degree"] = blr.deg_B;
      bl["multiplicity"] = blr.e_B;
      rep["base_locus"] = std::move(bl);
      applies = blr.dim_stabilized && blr.dim_B <= 0;
    }
    if (applies) {
      DegreeReport r = degree_via_formula(F, eff.n_max);
      ordered_json m;
      m["degree"] = r.deg_F;
      m["source_degree"] = r.deg_X;
      m["image_degree"] = r.deg_Y;
      m["base_multiplicity"] = r.e_B;
      methods["formula"] = std::move(m);
      record(r.deg_F, "formula");
    }
  }
  if (route == "auto") {
    if (plane_shape(F)) {
      try {
        DegreeReport r = p2_formula(F, eff.n_max);
        methods["plane_formula"] = ordered_json{{"degree", r.deg_F}};
        record(r.deg_F, "plane_formula");
      } catch (const HypothesisError&) {
        // not linear type / wrong degree; the route simply does not apply
      }
    }
    if (exact) {
      long o = fiber_oracle(F, eff.prime, 5, eff.seed);
      ordered_json m;
      m["degree"] = o;
      m["prime"] = eff.prime;
      m["trials"] = 5;
      m["seed"] = eff.seed;
      methods["oracle"] = std::move(m);
      record(o, "oracle");
    }
  }
  rep["degree"] = agreed;
  rep["methods"] = std::move(methods);
}

void run_birational(ordered_json& rep, const RationalMap& F,
                    const std::string& requested, const Effective& eff,
                    bool exact, int cap_ydeg,
                    std::vector<std::string>& warnings) {
  auto jacdual_analysis = [&]() {
    MapAnalysis an = is_birational_jacdual(F, cap_ydeg);
    if (an.verdict == Verdict::Undetermined)
      throw UnstabilizedError(
          "jacobian-dual rank undetermined under the y-degree cap; raise "
          "--cap-ydeg");
    return an;
  };

  std::string route = requested;
  const bool forced = requested != "auto";
  if (route == "auto") {
    const auto& d = F.degree.v;
    if (monomial_shape(F))
      route = "monomial";
    else if (plane_shape(F))
      route = "plane";
    else if (p1p1_shape(F) && (d[0] == 1 || d[1] == 1 || d == std::vector<int>{2, 2}))
      route = "p1p1";
    else
      route = "jacdual";
  }

  bool verdict = false;
  ordered_json details;
  for (;;) {
    if (route == "monomial") {
      if (!monomial_shape(F))
        throw HypothesisError(
            "monomial route needs monomial forms on a product of projective "
            "lines; use --route jacdual");
      try {
        verdict = is_birational_monomial(F);
      } catch (const HypothesisError& e) {
        if (forced) throw;
        warnings.push_back(std::string("monomial route inapplicable (") +
                           e.what() + "); fell back to the jacobian dual");
        route = "jacdual";
        continue;
      }
      break;
    }
    if (route == "plane") {
      if (!plane_shape(F))
        throw HypothesisError(
            "plane route needs three forms on P^2; use --route jacdual");
      try {
        Mu1Verdict v = is_birational_mu1(make_ideal(F.source, F.forms));
        verdict = v.birational;
        details["d"] = v.d;
        details["ht_I1"] = v.ht_I1;
        details["m"] = v.m;
      } catch (const HypothesisError& e) {
        if (forced) throw;
        warnings.push_back(std::string("plane route inapplicable (") +
                           e.what() + "); fell back to the jacobian dual");
        details = ordered_json();
        route = "jacdual";
        continue;
      }
      break;
    }
    if (route == "p1p1") {
      try {
        verdict = (F.degree.v == std::vector<int>{2, 2})
                      ? criterion_22(F, eff.n_max)
                      : criterion_1n(F, eff.n_max);
      } catch (const HypothesisError& e) {
        if (forced) throw;
        warnings.push_back(std::string("bidegree criterion inapplicable (") +
                           e.what() + "); fell back to the jacobian dual");
        route = "jacdual";
        continue;
      }
      break;
    }
    // jacdual
    MapAnalysis an = jacdual_analysis();
    verdict = (an.verdict == Verdict::Birational);
    details["ranks"] = an.ranks;
    details["image_dim"] = an.image_dim;
    details["image_degree"] = an.image_degree;
    if (!an.reason.empty()) details["reason"] = an.reason;
    break;
  }

  std::string cross;
  if (route == "jacdual") {
    if (exact) {
      long o = fiber_oracle(F, eff.prime, 5, eff.seed);
      if ((o == 1) != verdict)
        throw InconsistencyError(
            "fiber oracle disagrees with the jacobian-dual verdict");
      cross = "fiber-oracle: agree";
    } else {
      cross = "none (finite field source)";
    }
  } else {
    MapAnalysis an = jacdual_analysis();
    if ((an.verdict == Verdict::Birational) != verdict)
      throw InconsistencyError("jacobian-dual disagrees with the " + route +
                               " route");
    cross = "jacobian-dual: agree";
  }

  rep["verdict"] = verdict;
  rep["route"] = route;
  rep["cross_check"] = cross;
  if (!details.empty()) rep["details"] = std::move(details);
}

void run_sylvester(ordered_json& rep, const RationalMap& F) {
  HilbertBurchData hb = hilbert_burch(make_ideal(F.source, F.forms));
  rep["d"] = hb.d;
  rep["mu"] = std::vector<int>{hb.mu1, hb.mu2};
  rep["ht_I1"] = hb.ht_I1;
  rep["saturated"] = hb.saturated;
  if (!normalized_shape(hb)) {
    Mu1Normalization norm = normalize_mu1(hb);
    rep["substitution"] = poly_strings(norm.subst);
    hb = std::move(norm.hb);
  }
  BigradedIdeal eqs = rees_equations_mu1(hb);
  rep["m"] = static_cast<int>(eqs.gens.size()) - 2;
  rep["equations"] = gen_list(eqs);
}

void run_bounds(ordered_json& rep, const RationalMap& F, const Effective& eff,
                bool exact, std::vector<std::string>& warnings) {
  ordered_json bounds;
  long best = -1;
  auto keep = [&](long b) { best = best < 0 ? b : std::min(best, b); };
  try {
    long b = bound_single(F);
    bounds["single"] = b;
    keep(b);
  } catch (const HypothesisError&) {
  }
  try {
    long b = bound_p1p1(F, eff.n_max);
    bounds["p1p1"] = b;
    keep(b);
  } catch (const HypothesisError&) {
  }
  if (plane_shape(F)) {
    try {
      MuBound b = degree_bound_mu(hilbert_burch(make_ideal(F.source, F.forms)));
      bounds["mu_split"] =
          ordered_json{{"bound", b.bound}, {"exact_if_lci", b.exact_if_lci}};
      keep(b.bound);
    } catch (const HypothesisError&) {
    }
  }
  if (bounds.empty())
    throw HypothesisError("no degree bound applies to this source shape");
  if (exact) {
    long o = fiber_oracle(F, eff.prime, 5, eff.seed);
    if (o > best)
      throw InconsistencyError("fiber oracle exceeds a proved degree bound");
    bounds["oracle"] = o;
  } else {
    warnings.push_back("bounds not cross-checked (finite field source)");
  }
  rep["bounds"] = std::move(bounds);
}

}  // namespace

MapDocument parse_document(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? parse_json_doc(text) : parse_ini(text);
  }
  throw ParseError("empty document");
}

MapDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

RationalMap document_map(const MapDocument& doc) {
  Field field = parse_field(doc.field);
  try {
    RingPtr ring = make_ring(doc.blocks, field);
    RingDescriptor desc;
    if (doc.relations.empty()) {
      desc = make_descriptor(ring);
    } else {
      if (doc.relations.size() != doc.blocks.size())
        throw ParseError("'relations' must list one entry per block");
      std::vector<std::vector<MultiPoly>> rels(doc.relations.size());
      for (size_t b = 0; b < doc.relations.size(); ++b)
        for (const auto& s : doc.relations[b])
          rels[b].push_back(parse_polynomial(s, ring));
      desc = make_descriptor(ring, std::move(rels));
    }
    std::vector<MultiPoly> forms;
    for (const auto& s : doc.forms) forms.push_back(parse_polynomial(s, ring));
    return make_map(std::move(desc), std::move(forms));
  } catch (const ParseError&) {
    throw;
  } catch (const HypothesisError& e) {
    throw ParseError(std::string("document does not define a rational map: ") +
                     e.what());
  }
}

nlohmann::ordered_json run_command(const std::string& command,
                                   const MapDocument& doc,
                                   const RunOptions& opts) {
  static const std::set<std::string> commands = {
      "degree",   "birational", "inverse", "rees",   "sym",     "sylvester",
      "saturate", "hilbert",    "bounds",  "oracle", "syzygies"};
  static const std::set<std::string> routes = {"auto",  "jacdual", "monomial",
                                               "plane", "limit",   "formula"};
  if (!commands.count(command))
    throw ParseError("unknown command '" + command + "'");
  if (!routes.count(opts.route))
    throw ParseError("unknown route '" + opts.route + "'");
  if (opts.route != "auto") {
    bool degree_route = opts.route == "limit" || opts.route == "formula";
    if (command != "degree" && command != "birational")
      throw ParseError("--route does not apply to '" + command + "'");
    if (command == "degree" && !degree_route)
      throw ParseError("--route " + opts.route + " does not apply to 'degree'");
    if (command == "birational" && degree_route)
      throw ParseError("--route " + opts.route +
                       " does not apply to 'birational'");
  }

  RationalMap F = document_map(doc);
  Effective eff{opts.n_max > 0 ? opts.n_max : doc.n_max,
                opts.prime > 0 ? opts.prime : doc.prime,
                opts.seed >= 0 ? static_cast<std::uint64_t>(opts.seed)
                               : doc.seed};
  // The oracle reduces rational coefficients modulo its own prime; a source
  // already over GF(q) only matches when q is that prime.
  const Field& field = F.source.ring->field;
  bool exact = !field.is_prime() || field.p == eff.prime;

  ordered_json rep;
  rep["command"] = command;
  ordered_json src;
  src["blocks"] = doc.blocks;
  src["field"] = doc.field;
  if (!doc.relations.empty()) src["relations"] = doc.relations;
  rep["source"] = std::move(src);
  rep["forms"] = poly_strings(F.forms);
  ordered_json options;
  options["nmax"] = eff.n_max;
  options["prime"] = eff.prime;
  options["seed"] = eff.seed;
  if (opts.cap_ydeg >= 0) options["cap_ydeg"] = opts.cap_ydeg;
  rep["options"] = std::move(options);

  std::vector<std::string> warnings;
  if (F.source.has_relations() &&
      (command == "degree" || command == "bounds" || command == "hilbert"))
    warnings.push_back(
        "source has defining relations; saturated-fiber fits assume the base "
        "ideal has grade at least two over the source ring");

  if (command == "degree") {
    run_degree(rep, F, opts.route, eff, exact);
  } else if (command == "birational") {
    run_birational(rep, F, opts.route, eff, exact, opts.cap_ydeg, warnings);
  } else if (command == "inverse") {
    MapAnalysis an = is_birational_jacdual(F, opts.cap_ydeg);
    if (an.verdict == Verdict::Undetermined)
      throw UnstabilizedError(
          "jacobian-dual rank undetermined under the y-degree cap; raise "
          "--cap-ydeg");
    if (an.verdict != Verdict::Birational)
      throw HypothesisError("map is not birational; no inverse tuple");
    ordered_json inv = ordered_json::array();
    for (const auto& tuple : an.inverse) inv.push_back(poly_strings(tuple));
    rep["inverse"] = std::move(inv);
    rep["image"] = ordered_json{{"dim", an.image_dim},
                                {"degree", an.image_degree}};
  } else if (command == "rees") {
    BigradedIdeal B = rees_ideal(F);
    rep["count"] = B.gens.size();
    rep["generators"] = gen_list(B);
  } else if (command == "sym") {
    BigradedIdeal B = sym_ideal(F);
    rep["count"] = B.gens.size();
    rep["generators"] = gen_list(B);
    rep["linear_type"] = is_linear_type(F);
  } else if (command == "sylvester") {
    run_sylvester(rep, F);
  } else if (command == "saturate") {
    Ideal I = make_ideal(F.source, F.forms);
    Ideal S = saturate_irrelevant(I);
    rep["generators"] = poly_strings(S.gens);
    rep["unchanged"] = ideals_equal(I, S);
  } else if (command == "hilbert") {
    BaseLocusReport blr = base_locus_report(F, eff.n_max);
    ordered_json bl;
    bl["dim"] = blr.dim_B;
    bl["degree"] = blr.deg_B;
    bl["multiplicity"] = blr.e_B;
    bl["stabilized"] =
        blr.dim_stabilized && blr.deg_stabilized && blr.e_stabilized;
    rep["base_locus"] = std::move(bl);
    SaturatedFiberData sft = saturated_fiber_table(F, eff.n_max);
    ordered_json table = ordered_json::array();
    for (size_t n = 0; n < sft.table.size(); ++n)
      table.push_back(ordered_json::array(
          {n, sft.table[n].first, sft.table[n].second}));
    rep["fiber_table"] = std::move(table);
    rep["differences"] = sft.differences;
    rep["fit"] = ordered_json{{"degree", sft.fit.fitted_degree},
                              {"leading_delta", sft.fit.leading_delta.get_str()},
                              {"stabilized", sft.fit.stabilized}};
  } else if (command == "bounds") {
    run_bounds(rep, F, eff, exact, warnings);
  } else if (command == "oracle") {
    if (!exact)
      throw HypothesisError("oracle prime must match the source field");
    rep["degree"] = fiber_oracle(F, eff.prime, 5, eff.seed);
    rep["prime"] = eff.prime;
    rep["trials"] = 5;
    rep["seed"] = eff.seed;
  } else {  // syzygies
    SyzygyMatrix syz = syzygies(F.forms, F.source);
    ordered_json rows = ordered_json::array();
    for (const auto& row : syz.rows) rows.push_back(poly_strings(row));
    rep["count"] = syz.rows.size();
    rep["rows"] = std::move(rows);
    rep["linear_rank"] = linear_syzygy_rank(F);
  }

  rep["warnings"] = warnings;
  return rep;
}

namespace {

std::string leaf(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool scalar_array(const ordered_json& a) {
  for (const auto& e : a)
    if (e.is_object() || e.is_array()) return false;
  return true;
}

void render(const ordered_json& j, int indent, std::string& out) {
  std::string pad(indent, ' ');
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      out += pad + key + ":\n";
      render(value, indent + 2, out);
    } else if (value.is_array() && !scalar_array(value)) {
      out += pad + key + ":\n";
      for (const auto& e : value) out += pad + "  - " + e.dump() + "\n";
    } else {
      out += pad + key + ": " + leaf(value) + "\n";
    }
  }
}

}  // namespace

std::string render_text(const ordered_json& report) {
  std::string out;
  render(report, 0, out);
  return out;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return 2;
  if (dynamic_cast<const HypothesisError*>(&e)) return 3;
  if (dynamic_cast<const UnstabilizedError*>(&e)) return 4;
  if (dynamic_cast<const InconsistencyError*>(&e)) return 5;
  return 1;
}

}  // namespace birat
