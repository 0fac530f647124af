#include "mole/io.hpp"

#include <cmath>
#include <fmt/format.h>
#include <ostream>

namespace mole {

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  return fmt::format("{:.17g}", v);
}

namespace {

std::string x_header(std::size_t dim) {
  std::string h;
  for (std::size_t i = 1; i <= dim; ++i) h += fmt::format("x{},", i);
  return h;
}

std::string x_fields(const Vec& x) {
  std::string s;
  for (double v : x) s += format_double(v) + ",";
  return s;
}

}  // namespace

void write_sets_csv(std::ostream& out, const SetsArchive& archive, std::size_t dim) {
  out << "set_id,node_index," << x_header(dim) << "f1,f2\n";
  for (const auto& s : archive.sets()) {
    std::size_t k = 0;
    for (const auto& [key, node] : s) {
      out << s.id() << ',' << k++ << ',' << x_fields(node.x) << format_double(node.f[0]) << ','
          << format_double(node.f[1]) << '\n';
    }
  }
}

void write_descent_trace_csv(std::ostream& out, const std::vector<DescentTraceEntry>& trace,
                             std::size_t dim) {
  out << "t," << x_header(dim) << "f1,f2,alpha,mog_norm\n";
  for (const auto& e : trace) {
    out << e.iteration << ',' << x_fields(e.x) << format_double(e.f[0]) << ','
        << format_double(e.f[1]) << ',' << format_double(e.step) << ','
        << format_double(e.mog_norm) << '\n';
  }
}

void write_mogsa_archive_csv(std::ostream& out, const MogsaArchive& archive, std::size_t dim) {
  out << "t," << x_header(dim) << "f1,f2,alpha,mog_norm\n";
  for (std::size_t t = 0; t < archive.visited.size(); ++t) {
    const MogsaVisit& v = archive.visited[t];
    const double alpha = t == 0 ? 0.0 : distance(v.x, archive.visited[t - 1].x);
    out << t << ',' << x_fields(v.x) << format_double(v.f[0]) << ',' << format_double(v.f[1])
        << ',' << format_double(alpha) << ",\n";
  }
}

void write_postprocess_log_csv(std::ostream& out, const std::vector<PostProcessReport>& passes) {
  out << "pass,iteration,total_gap,max_hv,inserted,descent_skipped\n";
  for (std::size_t p = 0; p < passes.size(); ++p) {
    for (const auto& it : passes[p].log) {
      out << p << ',' << it.iteration << ',' << format_double(it.total_gap) << ','
          << format_double(it.max_hv) << ',' << (it.inserted ? 'y' : 'n') << ','
          << (it.descent_skipped ? 'y' : 'n') << '\n';
    }
  }
}

}  // namespace mole
