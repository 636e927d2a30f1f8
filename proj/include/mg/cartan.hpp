#ifndef MG_CARTAN_HPP
#define MG_CARTAN_HPP

#include <string>
#include <vector>

#include "vendor_json_fwd.hpp"

namespace mg {

// Integer Cartan matrix of a crystallographic root datum.  Entry a[i][j]
// drives the reflection action s_i(alpha_j) = alpha_j - a[i][j] * alpha_i.
struct CartanDatum {
  int rank = 0;
  std::vector<std::vector<int>> a;
  std::string label;

  // Checks diagonal 2, off-diagonal <= 0 and the zero-symmetry
  // a_ij = 0 <=> a_ji = 0.  Finiteness is checked at enumeration time.
  void validate() const;
};

// Built-in tables: A1, A2, A3, B2, G2 and 'x'-separated products of these
// (e.g. "A1xA1").
CartanDatum cartan_by_label(const std::string& label);
std::vector<std::string> builtin_cartan_labels();

// Config file: {"types": {"LABEL": {"cartan": [[2,-1],[-1,2]]}}}.
// Built-ins remain available; the file may shadow them.
CartanDatum cartan_from_config(const nlohmann::json& config, const std::string& label);

}  // namespace mg

#endif
