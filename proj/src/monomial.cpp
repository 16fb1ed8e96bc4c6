#include "birat/monomial.hpp"

#include "birat/errors.hpp"

namespace birat {

ExponentMatrix build_exponent_matrix(const RationalMap& F) {
  const Ring& src = *F.source.ring;
  int s = src.n_blocks();
  for (int b = 0; b < s; ++b)
    if (src.block_size(b) != 2)
      throw HypothesisError("monomial criterion needs a (P^1)^s source");
  if (F.source.has_relations())
    throw HypothesisError("monomial criterion needs free P^1 factors");
  if (static_cast<int>(F.forms.size()) != s + 1)
    throw HypothesisError("monomial criterion needs target P^s with s = " +
                          std::to_string(s));

  ExponentMatrix M;
  M.s = s;
  M.A.assign(2 * s + 1, std::vector<mpz_class>(s + 1, 0));
  for (int c = 0; c <= s; ++c) {
    const MultiPoly& f = F.forms[c];
    if (f.terms.size() != 1)
      throw HypothesisError("form " + std::to_string(c) +
                            " is not a monomial");
    const Exponent& e = f.terms.front().exp;
    for (int r = 0; r < 2 * s; ++r) M.A[r][c] = e[r];
    M.A[2 * s][c] = 1;
  }
  return M;
}

std::optional<std::vector<mpz_class>> solve_lattice(const ExponentMatrix& M,
                                                    int i) {
  if (i < 1 || i > M.s) throw HypothesisError("block index out of range");
  std::vector<mpz_class> b(2 * M.s + 1, 0);
  b[2 * i - 2] = 1;
  b[2 * i - 1] = -1;
  return solve_integer(M.A, b);
}

bool is_birational_monomial(const RationalMap& F) {
  ExponentMatrix M = build_exponent_matrix(F);
  if (rank_rational(M.A) != M.s + 1)
    throw HypothesisError("monomial map is not dominant");
  for (int i = 1; i <= M.s; ++i)
    if (!solve_lattice(M, i)) return false;
  return true;
}

}  // namespace birat
