#include "gmh/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace gmh {

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_trace_csv(const std::string& path, const ChainTrace& trace) {
  std::ofstream out(path);
  if (!out) throw Error("write_trace_csv: cannot open " + path);
  out << "iteration";
  for (int j = 0; j < trace.dim(); ++j) out << ",x" << j + 1;
  out << ",accepted\n";
  for (long i = 0; i < trace.size(); ++i) {
    out << i + 1;
    for (int j = 0; j < trace.dim(); ++j)
      out << ',' << format_full(trace.states(i, j));
    out << ',' << static_cast<int>(trace.accepted[static_cast<size_t>(i)])
        << '\n';
  }
}

ChainTrace read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("read_trace_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error("read_trace_csv: empty file");
  int dim = -1;
  {
    std::istringstream hs(line);
    std::string tok;
    int cols = 0;
    while (std::getline(hs, tok, ',')) ++cols;
    dim = cols - 2;
    if (dim < 1) throw Error("read_trace_csv: malformed header");
  }
  std::vector<std::vector<double>> rows;
  std::vector<std::uint8_t> accepted;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    std::vector<double> vals;
    while (std::getline(ls, tok, ',')) vals.push_back(std::stod(tok));
    if (static_cast<int>(vals.size()) != dim + 2)
      throw Error("read_trace_csv: ragged row");
    rows.emplace_back(vals.begin() + 1, vals.begin() + 1 + dim);
    accepted.push_back(vals.back() != 0.0 ? 1 : 0);
  }
  ChainTrace trace;
  trace.states = Matrix(static_cast<long>(rows.size()), dim);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < dim; ++j)
      trace.states(static_cast<long>(i), j) = rows[i][static_cast<size_t>(j)];
  trace.accepted = std::move(accepted);
  trace.direction.assign(rows.size(), -1);
  trace.log_alpha.assign(rows.size(), 0.0);
  return trace;
}

}  // namespace gmh
