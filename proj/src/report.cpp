#include "hodgevar/report.hpp"

#include <Eigen/Dense>
#include <cstdio>
#include <sstream>

namespace hodgevar {

std::string fmt_num(double x) {
  if (x == 0.0) x = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round12(double x) { return std::stod(fmt_num(x)); }

std::string fmt_complex(Complex c) {
  std::string s = fmt_num(c.real());
  if (c.imag() != 0.0) s += (c.imag() > 0 ? "+" : "") + fmt_num(c.imag()) + "i";
  return s;
}

Json json_num(double x) { return Json(round12(x)); }

Json json_complex(Complex c) {
  Json j;
  j["re"] = round12(c.real());
  j["im"] = round12(c.imag());
  return j;
}

Json json_complex_vector(const Eigen::VectorXcd& v) {
  Json j = Json::array();
  for (int i = 0; i < v.size(); ++i) j.push_back(json_complex(v[i]));
  return j;
}

TextTable::TextTable(std::vector<std::string> header) { rows_.push_back(std::move(header)); }

void TextTable::add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

std::string TextTable::str() const {
  std::vector<std::size_t> width;
  for (const auto& row : rows_) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream os;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (std::size_t c = 0; c < rows_[r].size(); ++c) {
      os << rows_[r][c];
      if (c + 1 < rows_[r].size())
        os << std::string(width[c] - rows_[r][c].size() + 2, ' ');
    }
    os << "\n";
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t c = 0; c < width.size(); ++c) total += width[c] + (c + 1 < width.size() ? 2 : 0);
      os << std::string(total, '-') << "\n";
    }
  }
  return os.str();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace hodgevar
