#include "annulab/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <system_error>

#include "annulab/errors.hpp"

namespace annulab {

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename " + tmp.string() + ": " + ec.message());
  }
}

std::string format_real(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::string fields_csv(const std::vector<std::pair<std::string, const ScalarField*>>& columns) {
  if (columns.empty()) throw Error(ErrorKind::invalid_parameter, "no fields to write");
  const GridSpec& g = columns.front().second->grid();
  for (const auto& c : columns) require_same_grid(g, c.second->grid());
  std::ostringstream os;
  os << std::setprecision(17) << "s,theta";
  for (const auto& c : columns) os << "," << c.first;
  os << "\n";
  for (std::size_t i = 0; i < g.n_s(); ++i)
    for (std::size_t j = 0; j < g.n_theta(); ++j) {
      os << g.s(i) << "," << g.theta(j);
      for (const auto& c : columns) os << "," << (*c.second)(i, j);
      os << "\n";
    }
  return os.str();
}

std::string obj_mesh(const AmbientField& f) {
  const GridSpec& g = f.grid();
  const std::size_t ns = g.n_s(), nt = g.n_theta();
  bool wrap = true;
  for (double jump : f.theta_jumps()) wrap = wrap && jump == 0.0;
  std::ostringstream os;
  os << std::setprecision(17);
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < nt; ++j) {
      os << "v";
      for (std::size_t c = 0; c < 3; ++c) os << " " << (c < f.dim() ? f(c, i, j) : 0.0);
      os << "\n";
    }
  auto id = [nt](std::size_t i, std::size_t j) { return i * nt + j + 1; };
  const std::size_t columns = wrap ? nt : nt - 1;
  for (std::size_t i = 0; i + 1 < ns; ++i)
    for (std::size_t j = 0; j < columns; ++j) {
      const std::size_t k = (j + 1) % nt;
      os << "f " << id(i, j) << " " << id(i + 1, j) << " " << id(i + 1, k) << " " << id(i, k) << "\n";
    }
  return os.str();
}

}  // namespace annulab
