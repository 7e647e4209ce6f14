#ifndef HODGEVAR_REPORT_HPP
#define HODGEVAR_REPORT_HPP

#include <Eigen/Dense>
#include <json.hpp>
#include <string>
#include <vector>

#include "hodgevar/config.hpp"

namespace hodgevar {

using Json = nlohmann::ordered_json;

// All numeric output goes through a 12-significant-digit round trip so text
// and JSON reports agree between backends and repeated runs byte for byte.
std::string fmt_num(double x);
double round12(double x);
std::string fmt_complex(Complex c);
Json json_num(double x);
Json json_complex(Complex c);
Json json_complex_vector(const Eigen::VectorXcd& v);

// Minimal aligned text table.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header);
  void add_row(std::vector<std::string> row);
  std::string str() const;

 private:
  std::vector<std::vector<std::string>> rows_;
};

std::string csv_escape(const std::string& s);

}  // namespace hodgevar

#endif
