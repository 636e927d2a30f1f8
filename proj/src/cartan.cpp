#include "mg/cartan.hpp"

#include <map>

#include "mg/errors.hpp"

namespace mg {

void CartanDatum::validate() const {
  if (rank <= 0) throw UsageError("cartan rank must be positive");
  if ((int)a.size() != rank) throw UsageError("cartan matrix size mismatch");
  for (int i = 0; i < rank; ++i) {
    if ((int)a[i].size() != rank) throw UsageError("cartan matrix not square");
    if (a[i][i] != 2) throw UsageError("cartan diagonal entry must be 2");
    for (int j = 0; j < rank; ++j) {
      if (i == j) continue;
      if (a[i][j] > 0) throw UsageError("cartan off-diagonal entry must be <= 0");
      if ((a[i][j] == 0) != (a[j][i] == 0))
        throw UsageError("cartan zero pattern must be symmetric");
    }
  }
}

namespace {

const std::map<std::string, std::vector<std::vector<int>>>& base_types() {
  static const std::map<std::string, std::vector<std::vector<int>>> t = {
      {"A1", {{2}}},
      {"A2", {{2, -1}, {-1, 2}}},
      {"A3", {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}},
      {"B2", {{2, -1}, {-2, 2}}},
      {"G2", {{2, -1}, {-3, 2}}},
  };
  return t;
}

std::vector<std::string> split_product(const std::string& label) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : label) {
    if (ch == 'x') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

CartanDatum block_diagonal(const std::vector<CartanDatum>& factors, const std::string& label) {
  CartanDatum cd;
  cd.label = label;
  for (auto& f : factors) cd.rank += f.rank;
  cd.a.assign(cd.rank, std::vector<int>(cd.rank, 0));
  int off = 0;
  for (auto& f : factors) {
    for (int i = 0; i < f.rank; ++i)
      for (int j = 0; j < f.rank; ++j) cd.a[off + i][off + j] = f.a[i][j];
    off += f.rank;
  }
  return cd;
}

}  // namespace

CartanDatum cartan_by_label(const std::string& label) {
  auto& base = base_types();
  auto it = base.find(label);
  if (it != base.end()) {
    CartanDatum cd{(int)it->second.size(), it->second, label};
    cd.validate();
    return cd;
  }
  if (label.find('x') != std::string::npos) {
    std::vector<CartanDatum> factors;
    for (auto& part : split_product(label)) {
      auto fit = base.find(part);
      if (fit == base.end()) throw UsageError("unknown cartan type: " + label);
      factors.push_back(CartanDatum{(int)fit->second.size(), fit->second, part});
    }
    auto cd = block_diagonal(factors, label);
    cd.validate();
    return cd;
  }
  throw UsageError("unknown cartan type: " + label);
}

std::vector<std::string> builtin_cartan_labels() {
  std::vector<std::string> out;
  for (auto& [k, v] : base_types()) out.push_back(k);
  out.push_back("A1xA1");
  return out;
}

CartanDatum cartan_from_config(const nlohmann::json& config, const std::string& label) {
  if (config.contains("types") && config["types"].contains(label)) {
    const auto& spec = config["types"][label];
    CartanDatum cd;
    cd.label = label;
    cd.a = spec.at("cartan").get<std::vector<std::vector<int>>>();
    cd.rank = (int)cd.a.size();
    cd.validate();
    return cd;
  }
  return cartan_by_label(label);
}

}  // namespace mg
