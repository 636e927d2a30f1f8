#ifndef MG_VERIFY_HPP
#define MG_VERIFY_HPP

#include <string>
#include <vector>

#include "cache.hpp"
#include "zmod.hpp"

namespace mg::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  nlohmann::json detail;  // includes every compared Laurent pair
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> items;

  bool all_pass() const;
  int failed() const;
  nlohmann::json to_json() const;
};

std::vector<std::vector<int>> all_parabolic_subsets(int rank);

// 1. the S3 figure: both Bruhat graphs and the quotient map values
SuiteReport figure_reproduction();
// 2. h^J([Gamma(B^J(w))<l(w)>]) = Deodhar basis, all w in W^J
SuiteReport bmp_vs_oracle(const std::string& label, const std::vector<int>& J,
                          bool parallel = true);
// 3. character commutation for iterated translations + the three-case rank rule
SuiteReport translation_commutation(const std::string& label, const std::vector<int>& J,
                                    int maxdepth = 5);
// 4. p^{J,*} B^J(w) vs B(w wJ) stalkwise/edgewise + pullback rank identity
SuiteReport pullback_theorem(const std::string& label, const std::vector<int>& J);
// 5. i . h^J = h^0 . I on BMP classes (sign of the shift is reported)
SuiteReport embedding_diagram(const std::string& label, const std::vector<int>& J);
// 6a. bar involution and KL/Deodhar triangularity conditions, all J
SuiteReport hecke_conditions(const std::string& label);
// 6b. invariant-split round trip, rank-2 freeness, c(lambda)^J membership
SuiteReport split_and_clambda(const std::string& label, const std::vector<int>& J,
                              int degree_bound = 12, int nlambda = 20);
// 7. lifting lemma, (tx)^J = x, coset factorization, exhaustively
SuiteReport combinatorial(const std::string& label);
// 8. graded_rank rejection + BMP stabilization under bound+4
SuiteReport robustness(const std::string& label, const std::vector<int>& J);

void parallel_for(int n, const std::function<void(int)>& fn, bool parallel = true);

}  // namespace mg::verify

#endif
