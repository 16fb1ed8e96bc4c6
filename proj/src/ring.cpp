#include "birat/ring.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace birat {

// ---------------------------------------------------------------------------
// Field
// ---------------------------------------------------------------------------

Field Field::prime(long p) {
  if (p < 2 || p >= (1L << 31))
    throw HypothesisError("field characteristic out of range");
  mpz_class n(p);
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0)
    throw HypothesisError("field characteristic " + std::to_string(p) +
                          " is not prime");
  return Field{FieldKind::Prime, p};
}

mpq_class Field::normalize(const mpq_class& c) const {
  if (kind == FieldKind::Rationals) return c;
  mpz_class P(p);
  mpz_class num = c.get_num() % P;
  if (num < 0) num += P;
  mpz_class den = c.get_den() % P;
  if (den == 0)
    throw HypothesisError("coefficient denominator divisible by " +
                          std::to_string(p));
  if (den != 1) {
    mpz_class dinv;
    if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t()) == 0)
      throw HypothesisError("coefficient denominator not invertible mod p");
    num = (num * dinv) % P;
  }
  return mpq_class(num);
}

mpq_class Field::add(const mpq_class& a, const mpq_class& b) const {
  return normalize(a + b);
}
mpq_class Field::sub(const mpq_class& a, const mpq_class& b) const {
  return normalize(a - b);
}
mpq_class Field::mul(const mpq_class& a, const mpq_class& b) const {
  return normalize(a * b);
}
mpq_class Field::neg(const mpq_class& a) const { return normalize(-a); }
mpq_class Field::inv(const mpq_class& a) const {
  if (a == 0) throw InconsistencyError("field inverse of zero");
  if (kind == FieldKind::Rationals) return 1 / a;
  mpz_class P(p), v = normalize(a).get_num(), r;
  if (mpz_invert(r.get_mpz_t(), v.get_mpz_t(), P.get_mpz_t()) == 0)
    throw InconsistencyError("field inverse does not exist");
  return mpq_class(r);
}
mpq_class Field::div(const mpq_class& a, const mpq_class& b) const {
  return mul(a, inv(b));
}

// ---------------------------------------------------------------------------
// Ring
// ---------------------------------------------------------------------------

int Ring::var_index(const std::string& name) const {
  for (int i = 0; i < n_vars(); ++i)
    if (vars[i] == name) return i;
  return -1;
}

namespace {

bool identifier_shaped(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
    return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

bool reserved_name(const std::string& s) {
  if (s == "t" || s == "w") return true;
  if (s.size() >= 2 && s[0] == 'y') {
    bool digits = true;
    for (size_t i = 1; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) digits = false;
    if (digits) return true;
  }
  return false;
}

}  // namespace

RingPtr make_ring(std::vector<std::vector<std::string>> blocks, Field field,
                  bool allow_reserved) {
  if (blocks.empty()) throw HypothesisError("ring needs at least one block");
  auto ring = std::make_shared<Ring>();
  ring->blocks = std::move(blocks);
  ring->field = field;
  for (int b = 0; b < ring->n_blocks(); ++b) {
    if (ring->blocks[b].empty())
      throw HypothesisError("empty variable block");
    ring->block_start.push_back(static_cast<int>(ring->vars.size()));
    for (const auto& name : ring->blocks[b]) {
      if (!identifier_shaped(name))
        throw HypothesisError("bad variable name '" + name + "'");
      if (!allow_reserved && reserved_name(name))
        throw HypothesisError("variable name '" + name +
                              "' is reserved (t, w, y0, y1, ...)");
      if (ring->var_index(name) >= 0)
        throw HypothesisError("duplicate variable name '" + name + "'");
      ring->vars.push_back(name);
      ring->block_of.push_back(b);
    }
  }
  return ring;
}

bool rings_compatible(const Ring& a, const Ring& b) {
  if (&a == &b) return true;
  return a.blocks == b.blocks && a.field == b.field;
}

// ---------------------------------------------------------------------------
// MultiDegree
// ---------------------------------------------------------------------------

int MultiDegree::total() const {
  int s = 0;
  for (int x : v) s += x;
  return s;
}

MultiDegree MultiDegree::operator+(const MultiDegree& o) const {
  MultiDegree r = *this;
  for (size_t i = 0; i < v.size(); ++i) r.v[i] += o.v[i];
  return r;
}

MultiDegree MultiDegree::operator*(int k) const {
  MultiDegree r = *this;
  for (auto& x : r.v) x *= k;
  return r;
}

bool MultiDegree::dominates(const MultiDegree& lower) const {
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] < lower.v[i]) return false;
  return true;
}

std::string MultiDegree::str() const {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// Monomial order primitives
// ---------------------------------------------------------------------------

int grevlex_compare(const Exponent& u, const Exponent& v) {
  int du = 0, dv = 0;
  for (int x : u) du += x;
  for (int x : v) dv += x;
  if (du != dv) return du > dv ? 1 : -1;
  for (int i = static_cast<int>(u.size()) - 1; i >= 0; --i) {
    if (u[i] != v[i]) return u[i] < v[i] ? 1 : -1;
  }
  return 0;
}

namespace {

// Descending storage order.
struct StorageCmp {
  bool operator()(const Exponent& a, const Exponent& b) const {
    return grevlex_compare(a, b) > 0;
  }
};

using TermMap = std::map<Exponent, mpq_class, StorageCmp>;

MultiPoly from_map(RingPtr ring, TermMap& m) {
  MultiPoly r{std::move(ring), {}};
  const Field& f = r.ring->field;
  for (auto& [e, c] : m) {
    mpq_class cn = f.normalize(c);
    if (cn != 0) r.terms.push_back(Term{e, cn});
  }
  return r;
}

void require_compatible(const MultiPoly& a, const MultiPoly& b) {
  if (!a.ring || !b.ring || !rings_compatible(*a.ring, *b.ring))
    throw HypothesisError("polynomials live in different rings");
}

}  // namespace

// ---------------------------------------------------------------------------
// MultiPoly construction and arithmetic
// ---------------------------------------------------------------------------

bool MultiPoly::is_constant() const {
  if (terms.empty()) return true;
  if (terms.size() > 1) return false;
  for (int e : terms[0].exp)
    if (e) return false;
  return true;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  if (!ring || !o.ring || !rings_compatible(*ring, *o.ring)) return false;
  if (terms.size() != o.terms.size()) return false;
  for (size_t i = 0; i < terms.size(); ++i)
    if (terms[i].exp != o.terms[i].exp || terms[i].coeff != o.terms[i].coeff)
      return false;
  return true;
}

MultiPoly MultiPoly::constant(RingPtr r, const mpq_class& c) {
  mpq_class cn = r->field.normalize(c);
  MultiPoly p{std::move(r), {}};
  if (cn != 0)
    p.terms.push_back(Term{Exponent(p.ring->n_vars(), 0), cn});
  return p;
}

MultiPoly MultiPoly::variable(RingPtr r, int var) {
  if (var < 0 || var >= r->n_vars())
    throw HypothesisError("variable index out of range");
  Exponent e(r->n_vars(), 0);
  e[var] = 1;
  MultiPoly p{std::move(r), {}};
  p.terms.push_back(Term{std::move(e), mpq_class(1)});
  return p;
}

MultiPoly MultiPoly::monomial(RingPtr r, Exponent e, const mpq_class& c) {
  if (static_cast<int>(e.size()) != r->n_vars())
    throw HypothesisError("exponent vector has wrong length");
  for (int x : e)
    if (x < 0) throw HypothesisError("negative exponent");
  mpq_class cn = r->field.normalize(c);
  MultiPoly p{std::move(r), {}};
  if (cn != 0) p.terms.push_back(Term{std::move(e), cn});
  return p;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  require_compatible(a, b);
  const Field& f = a.ring->field;
  MultiPoly r{a.ring, {}};
  r.terms.reserve(a.terms.size() + b.terms.size());
  size_t i = 0, j = 0;
  while (i < a.terms.size() && j < b.terms.size()) {
    int c = grevlex_compare(a.terms[i].exp, b.terms[j].exp);
    if (c > 0) {
      r.terms.push_back(a.terms[i++]);
    } else if (c < 0) {
      r.terms.push_back(b.terms[j++]);
    } else {
      mpq_class s = f.add(a.terms[i].coeff, b.terms[j].coeff);
      if (s != 0) r.terms.push_back(Term{a.terms[i].exp, s});
      ++i, ++j;
    }
  }
  for (; i < a.terms.size(); ++i) r.terms.push_back(a.terms[i]);
  for (; j < b.terms.size(); ++j) r.terms.push_back(b.terms[j]);
  return r;
}

MultiPoly operator-(const MultiPoly& a) { return scale(a, mpq_class(-1)); }

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
  return a + (-b);
}

MultiPoly scale(const MultiPoly& a, const mpq_class& c) {
  const Field& f = a.ring->field;
  mpq_class cn = f.normalize(c);
  MultiPoly r{a.ring, {}};
  if (cn == 0) return r;
  r.terms.reserve(a.terms.size());
  for (const auto& t : a.terms) {
    mpq_class v = f.mul(t.coeff, cn);
    if (v != 0) r.terms.push_back(Term{t.exp, v});
  }
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  require_compatible(a, b);
  TermMap acc;
  const int n = a.ring->n_vars();
  for (const auto& ta : a.terms) {
    for (const auto& tb : b.terms) {
      Exponent e(n);
      for (int k = 0; k < n; ++k) e[k] = ta.exp[k] + tb.exp[k];
      auto it = acc.find(e);
      if (it == acc.end())
        acc.emplace(std::move(e), ta.coeff * tb.coeff);
      else
        it->second += ta.coeff * tb.coeff;
    }
  }
  return from_map(a.ring, acc);
}

MultiPoly pow(const MultiPoly& a, int e) {
  if (e < 0) throw HypothesisError("negative power");
  MultiPoly r = MultiPoly::constant(a.ring, 1);
  MultiPoly base = a;
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, PolyOp op) {
  switch (op) {
    case PolyOp::Add: return a + b;
    case PolyOp::Sub: return a - b;
    case PolyOp::Mul: return a * b;
  }
  throw InconsistencyError("unreachable");
}

// ---------------------------------------------------------------------------
// Degrees
// ---------------------------------------------------------------------------

MultiDegree exp_multi_degree(const Ring& ring, const Exponent& e) {
  MultiDegree d;
  d.v.assign(ring.n_blocks(), 0);
  for (int i = 0; i < ring.n_vars(); ++i) d.v[ring.block_of[i]] += e[i];
  return d;
}

bool is_multi_homogeneous(const MultiPoly& p) {
  if (p.terms.size() <= 1) return true;
  MultiDegree d0 = exp_multi_degree(*p.ring, p.terms[0].exp);
  for (size_t i = 1; i < p.terms.size(); ++i)
    if (exp_multi_degree(*p.ring, p.terms[i].exp) != d0) return false;
  return true;
}

MultiDegree multi_degree(const MultiPoly& p) {
  if (p.is_zero())
    throw HypothesisError("zero polynomial has no multi-degree");
  MultiDegree d0 = exp_multi_degree(*p.ring, p.terms[0].exp);
  for (size_t i = 1; i < p.terms.size(); ++i)
    if (exp_multi_degree(*p.ring, p.terms[i].exp) != d0)
      throw HypothesisError("polynomial is not multi-homogeneous");
  return d0;
}

// ---------------------------------------------------------------------------
// Substitution / transport
// ---------------------------------------------------------------------------

MultiPoly substitute(const MultiPoly& p, RingPtr target,
                     const std::vector<MultiPoly>& images) {
  if (static_cast<int>(images.size()) != p.ring->n_vars())
    throw HypothesisError("substitute: one image per source variable needed");
  for (const auto& im : images)
    if (!rings_compatible(*im.ring, *target))
      throw HypothesisError("substitute: image in wrong ring");
  // powers[i][k] = images[i]^k, built on demand
  std::vector<std::vector<MultiPoly>> powers(images.size());
  auto power = [&](int i, int k) -> const MultiPoly& {
    auto& ladder = powers[i];
    if (ladder.empty()) ladder.push_back(MultiPoly::constant(target, 1));
    while (static_cast<int>(ladder.size()) <= k)
      ladder.push_back(ladder.back() * images[i]);
    return ladder[k];
  };
  MultiPoly out = MultiPoly::zero(target);
  for (const auto& t : p.terms) {
    MultiPoly m = MultiPoly::constant(target, t.coeff);
    for (int i = 0; i < p.ring->n_vars(); ++i)
      if (t.exp[i]) m = m * power(i, t.exp[i]);
    out = out + m;
  }
  return out;
}

MultiPoly transport(const MultiPoly& p, RingPtr target) {
  if (!(p.ring->field == target->field))
    throw HypothesisError("transport: field mismatch");
  std::vector<int> where(p.ring->n_vars(), -1);
  TermMap acc;
  for (const auto& t : p.terms) {
    Exponent e(target->n_vars(), 0);
    for (int i = 0; i < p.ring->n_vars(); ++i) {
      if (!t.exp[i]) continue;
      if (where[i] == -1) {
        where[i] = target->var_index(p.ring->vars[i]);
        if (where[i] == -1)
          throw HypothesisError("transport: variable '" + p.ring->vars[i] +
                                "' absent from target ring");
      }
      e[where[i]] = t.exp[i];
    }
    auto it = acc.find(e);
    if (it == acc.end())
      acc.emplace(std::move(e), t.coeff);
    else
      it->second += t.coeff;
  }
  return from_map(target, acc);
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Token {
  enum Kind { Int, Name, Plus, Minus, Star, Caret, Slash, LParen, RParen, End };
  Kind kind;
  std::string text;
  size_t pos;
};

struct Lexer {
  const std::string& s;
  size_t i = 0;
  Token next() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) return {Token::End, "", i};
    size_t start = i;
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
        ++i;
      return {Token::Int, s.substr(start, i - start), start};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
        ++i;
      return {Token::Name, s.substr(start, i - start), start};
    }
    ++i;
    switch (c) {
      case '+': return {Token::Plus, "+", start};
      case '-': return {Token::Minus, "-", start};
      case '*': return {Token::Star, "*", start};
      case '^': return {Token::Caret, "^", start};
      case '/': return {Token::Slash, "/", start};
      case '(': return {Token::LParen, "(", start};
      case ')': return {Token::RParen, ")", start};
    }
    throw ParseError("unexpected character '" + std::string(1, c) +
                     "' at position " + std::to_string(start));
  }
};

struct Parser {
  RingPtr ring;
  Lexer lex;
  Token tok;

  explicit Parser(const std::string& s, RingPtr r) : ring(std::move(r)), lex{s} {
    tok = lex.next();
  }
  void advance() { tok = lex.next(); }

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(what + " at position " + std::to_string(tok.pos));
  }

  MultiPoly expr() {
    MultiPoly acc = term();
    while (tok.kind == Token::Plus || tok.kind == Token::Minus) {
      bool minus = tok.kind == Token::Minus;
      advance();
      MultiPoly t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    while (tok.kind == Token::Star) {
      advance();
      acc = acc * factor();
    }
    return acc;
  }

  MultiPoly factor() {
    MultiPoly base = atom();
    if (tok.kind == Token::Caret) {
      advance();
      if (tok.kind == Token::Minus) fail("exponent must be nonnegative");
      if (tok.kind != Token::Int) fail("expected integer exponent");
      long e = std::stol(tok.text);
      advance();
      return pow(base, static_cast<int>(e));
    }
    return base;
  }

  MultiPoly atom() {
    switch (tok.kind) {
      case Token::Minus: {
        advance();
        return -factor();
      }
      case Token::Plus: {
        advance();
        return factor();
      }
      case Token::Int: {
        mpz_class num(tok.text);
        advance();
        if (tok.kind == Token::Slash) {
          advance();
          if (tok.kind != Token::Int) fail("expected integer denominator");
          mpz_class den(tok.text);
          advance();
          if (den == 0) fail("zero denominator");
          mpq_class q(num, den);
          q.canonicalize();
          return MultiPoly::constant(ring, q);
        }
        return MultiPoly::constant(ring, mpq_class(num));
      }
      case Token::Name: {
        int v = ring->var_index(tok.text);
        if (v < 0) fail("unknown variable '" + tok.text + "'");
        advance();
        return MultiPoly::variable(ring, v);
      }
      case Token::LParen: {
        advance();
        MultiPoly inner = expr();
        if (tok.kind != Token::RParen) fail("expected ')'");
        advance();
        return inner;
      }
      default:
        fail("expected a term");
    }
  }
};

}  // namespace

MultiPoly parse_polynomial(const std::string& text, RingPtr ring) {
  Parser p(text, std::move(ring));
  MultiPoly result = p.expr();
  if (p.tok.kind != Token::End) {
    if (p.tok.kind == Token::Int || p.tok.kind == Token::Name ||
        p.tok.kind == Token::LParen)
      p.fail("missing '*' (implicit multiplication is not allowed)");
    p.fail("unexpected token '" + p.tok.text + "'");
  }
  return result;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

std::string coeff_str(const mpq_class& c) {
  std::ostringstream os;
  os << c.get_num();
  if (c.get_den() != 1) os << '/' << c.get_den();
  return os.str();
}

std::string monomial_str(const Ring& ring, const Exponent& e) {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < ring.n_vars(); ++i) {
    if (!e[i]) continue;
    if (!first) os << '*';
    first = false;
    os << ring.vars[i];
    if (e[i] > 1) os << '^' << e[i];
  }
  return os.str();
}

}  // namespace

std::string to_string(const MultiPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms) {
    mpq_class c = t.coeff;
    bool neg = c < 0;
    if (first) {
      if (neg) os << '-';
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    mpq_class a = neg ? mpq_class(-c) : c;
    std::string mono = monomial_str(*p.ring, t.exp);
    if (mono.empty()) {
      os << coeff_str(a);
    } else if (a == 1) {
      os << mono;
    } else {
      os << coeff_str(a) << '*' << mono;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Term orders
// ---------------------------------------------------------------------------

TermOrder TermOrder::elimination_split(const Ring& ring, int first_k) {
  if (first_k <= 0 || first_k > ring.n_vars())
    throw HypothesisError("elimination split out of range");
  TermOrder o;
  o.kind = Kind::Elimination;
  o.elim_mask.assign(ring.n_vars(), 0);
  for (int i = 0; i < first_k; ++i) o.elim_mask[i] = 1;
  return o;
}

TermOrder TermOrder::eliminating(const Ring& ring,
                                 const std::vector<int>& vars) {
  if (vars.empty()) throw HypothesisError("empty elimination set");
  TermOrder o;
  o.kind = Kind::Elimination;
  o.elim_mask.assign(ring.n_vars(), 0);
  for (int v : vars) {
    if (v < 0 || v >= ring.n_vars())
      throw HypothesisError("elimination variable out of range");
    o.elim_mask[v] = 1;
  }
  return o;
}

TermOrder TermOrder::weighted(std::vector<long> w) {
  TermOrder o;
  o.kind = Kind::Weighted;
  o.weights = std::move(w);
  return o;
}

TermOrder TermOrder::grevlex_permuted(std::vector<int> perm) {
  TermOrder o;
  o.kind = Kind::Grevlex;
  std::vector<char> seen(perm.size(), 0);
  for (int v : perm) {
    if (v < 0 || v >= static_cast<int>(perm.size()) || seen[v])
      throw HypothesisError("grevlex permutation is not a permutation");
    seen[v] = 1;
  }
  o.perm = std::move(perm);
  return o;
}

namespace {

int masked_grevlex(const Exponent& u, const Exponent& v,
                   const std::vector<char>& mask, bool inverted) {
  long du = 0, dv = 0;
  const int n = static_cast<int>(u.size());
  for (int i = 0; i < n; ++i) {
    bool in = mask[i] != 0;
    if (in == inverted) continue;
    du += u[i];
    dv += v[i];
  }
  if (du != dv) return du > dv ? 1 : -1;
  for (int i = n - 1; i >= 0; --i) {
    bool in = mask[i] != 0;
    if (in == inverted) continue;
    if (u[i] != v[i]) return u[i] < v[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace

int TermOrder::compare(const Exponent& u, const Exponent& v) const {
  switch (kind) {
    case Kind::Grevlex: {
      if (perm.empty()) return grevlex_compare(u, v);
      int du = 0, dv = 0;
      for (size_t i = 0; i < u.size(); ++i) du += u[i], dv += v[i];
      if (du != dv) return du > dv ? 1 : -1;
      for (int i = static_cast<int>(perm.size()) - 1; i >= 0; --i) {
        int k = perm[i];
        if (u[k] != v[k]) return u[k] < v[k] ? 1 : -1;
      }
      return 0;
    }
    case Kind::Lex: {
      for (size_t i = 0; i < u.size(); ++i)
        if (u[i] != v[i]) return u[i] > v[i] ? 1 : -1;
      return 0;
    }
    case Kind::Elimination: {
      int c = masked_grevlex(u, v, elim_mask, false);
      if (c) return c;
      return masked_grevlex(u, v, elim_mask, true);
    }
    case Kind::Weighted: {
      long long wu = 0, wv = 0;
      for (size_t i = 0; i < u.size(); ++i) {
        wu += static_cast<long long>(weights[i]) * u[i];
        wv += static_cast<long long>(weights[i]) * v[i];
      }
      if (wu != wv) return wu > wv ? 1 : -1;
      return grevlex_compare(u, v);
    }
  }
  throw InconsistencyError("unreachable");
}

int compare_monomials(const Exponent& u, const Exponent& v,
                      const TermOrder& order) {
  if (u.size() != v.size())
    throw HypothesisError("comparing exponent vectors of different length");
  if (order.kind == TermOrder::Kind::Elimination &&
      order.elim_mask.size() != u.size())
    throw HypothesisError("elimination mask does not match ring");
  if (order.kind == TermOrder::Kind::Weighted &&
      order.weights.size() != u.size())
    throw HypothesisError("weight vector does not match ring");
  if (order.kind == TermOrder::Kind::Grevlex && !order.perm.empty() &&
      order.perm.size() != u.size())
    throw HypothesisError("grevlex permutation does not match ring");
  return order.compare(u, v);
}

int leading_index(const MultiPoly& p, const TermOrder& order) {
  if (p.is_zero()) throw HypothesisError("zero polynomial has no leading term");
  if (order.kind == TermOrder::Kind::Grevlex && order.perm.empty())
    return 0;  // storage order
  int best = 0;
  for (int i = 1; i < static_cast<int>(p.terms.size()); ++i)
    if (order.compare(p.terms[i].exp, p.terms[best].exp) > 0) best = i;
  return best;
}

namespace {

// All weak compositions of total into `width` parts, appended to the slice
// [start, start+width) of a working exponent vector.
void compositions_into(Exponent& work, int start, int width, int total,
                       std::vector<Exponent>& out) {
  if (width == 1) {
    work[start] = total;
    out.push_back(work);
    work[start] = 0;
    return;
  }
  for (int head = total; head >= 0; --head) {
    work[start] = head;
    compositions_into(work, start + 1, width - 1, total - head, out);
  }
  work[start] = 0;
}

}  // namespace

std::vector<Exponent> monomials_of_degree(const Ring& ring,
                                          const MultiDegree& d) {
  if (static_cast<int>(d.v.size()) != ring.n_blocks())
    throw HypothesisError("multi-degree does not match ring block count");
  for (int di : d.v)
    if (di < 0) throw HypothesisError("negative multi-degree");
  std::vector<Exponent> acc;
  acc.emplace_back(ring.n_vars(), 0);
  for (int b = 0; b < ring.n_blocks(); ++b) {
    std::vector<Exponent> block;
    Exponent work(ring.n_vars(), 0);
    compositions_into(work, ring.block_start[b], ring.block_size(b), d.v[b],
                      block);
    std::vector<Exponent> next;
    next.reserve(acc.size() * block.size());
    for (const auto& a : acc)
      for (const auto& m : block) {
        Exponent e = a;
        for (int i = ring.block_start[b];
             i < ring.block_start[b] + ring.block_size(b); ++i)
          e[i] += m[i];
        next.push_back(std::move(e));
      }
    acc = std::move(next);
  }
  std::sort(acc.begin(), acc.end(), [](const Exponent& u, const Exponent& v) {
    return grevlex_compare(u, v) > 0;
  });
  return acc;
}

// ---------------------------------------------------------------------------
// Descriptors and maps
// ---------------------------------------------------------------------------

bool RingDescriptor::has_relations() const {
  for (const auto& b : relations)
    if (!b.empty()) return true;
  return false;
}

std::vector<MultiPoly> RingDescriptor::all_relations() const {
  std::vector<MultiPoly> out;
  for (const auto& b : relations)
    for (const auto& p : b) out.push_back(p);
  return out;
}

RingDescriptor make_descriptor(RingPtr ring) {
  RingDescriptor d;
  d.relations.assign(ring->n_blocks(), {});
  d.ring = std::move(ring);
  return d;
}

RingDescriptor make_descriptor(RingPtr ring,
                               std::vector<std::vector<MultiPoly>> relations) {
  if (relations.empty()) return make_descriptor(std::move(ring));
  if (static_cast<int>(relations.size()) != ring->n_blocks())
    throw HypothesisError("one relation list per block required");
  for (int b = 0; b < ring->n_blocks(); ++b) {
    for (const auto& g : relations[b]) {
      if (!rings_compatible(*g.ring, *ring))
        throw HypothesisError("relation lives in a different ring");
      if (g.is_zero()) throw HypothesisError("zero relation");
      multi_degree(g);  // must be multi-homogeneous
      for (const auto& t : g.terms)
        for (int i = 0; i < ring->n_vars(); ++i)
          if (t.exp[i] && ring->block_of[i] != b)
            throw HypothesisError(
                "relation for block " + std::to_string(b + 1) +
                " uses variables outside the block");
    }
  }
  RingDescriptor d;
  d.ring = std::move(ring);
  d.relations = std::move(relations);
  return d;
}

RationalMap make_map(RingDescriptor source, std::vector<MultiPoly> forms) {
  if (forms.size() < 2)
    throw HypothesisError("a rational map needs at least two forms");
  for (const auto& f : forms) {
    if (!rings_compatible(*f.ring, *source.ring))
      throw HypothesisError("form lives outside the source ring");
    if (f.is_zero()) throw HypothesisError("zero form");
  }
  MultiDegree d = multi_degree(forms[0]);
  for (size_t i = 1; i < forms.size(); ++i)
    if (multi_degree(forms[i]) != d)
      throw HypothesisError("forms do not share a multi-degree");
  RationalMap F;
  F.source = std::move(source);
  F.forms = std::move(forms);
  F.degree = std::move(d);
  return F;
}

// ---------------------------------------------------------------------------
// Small shared utilities
// ---------------------------------------------------------------------------

long long binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  if (!r.fits_slong_p())
    throw InconsistencyError("binomial overflow");
  return r.get_si();
}

std::string fresh_var_name(const Ring& ring, const std::string& base) {
  std::string name = base;
  while (ring.var_index(name) >= 0) name += "_";
  return name;
}

}  // namespace birat
