#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "mumenet/errors.hpp"
#include "mumenet/milp.hpp"

namespace mumenet {

namespace {

/// Shortest round-trip decimal form, deterministic across runs.
std::string format_number(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void append_terms(std::ostream& os, const MilpModel& model, const std::vector<LinTerm>& terms) {
  bool first = true;
  for (const LinTerm& t : terms) {
    const double c = t.coef;
    if (c == 0.0) continue;
    if (first) {
      if (c == 1.0)
        os << model.vars[t.var].name;
      else if (c == -1.0)
        os << "- " << model.vars[t.var].name;
      else
        os << format_number(c) << " " << model.vars[t.var].name;
      first = false;
    } else {
      if (c == 1.0)
        os << " + " << model.vars[t.var].name;
      else if (c == -1.0)
        os << " - " << model.vars[t.var].name;
      else if (c > 0)
        os << " + " << format_number(c) << " " << model.vars[t.var].name;
      else
        os << " - " << format_number(-c) << " " << model.vars[t.var].name;
    }
  }
  if (first) os << "0";
}

}  // namespace

std::string export_lp(const MilpModel& model, const std::string& path) {
  std::ostringstream os;
  os << "Minimize\n obj: ";
  append_terms(os, model, model.objective);
  os << "\nSubject To\n";
  for (const Constraint& c : model.cons) {
    os << " " << c.name << ": ";
    append_terms(os, model, c.terms);
    switch (c.rel) {
      case Rel::Le: os << " <= "; break;
      case Rel::Ge: os << " >= "; break;
      case Rel::Eq: os << " = "; break;
    }
    os << format_number(c.rhs) << "\n";
  }
  os << "Bounds\n";
  for (const Variable& v : model.vars) {
    if (v.is_integer && v.lb == 0.0 && v.ub == 1.0) continue;  // binary default
    if (v.lb == v.ub)
      os << " " << v.name << " = " << format_number(v.lb) << "\n";
    else
      os << " " << format_number(v.lb) << " <= " << v.name << " <= " << format_number(v.ub) << "\n";
  }
  bool any_binary = false;
  for (const Variable& v : model.vars) any_binary |= v.is_integer;
  if (any_binary) {
    os << "Binary\n";
    for (const Variable& v : model.vars)
      if (v.is_integer) os << " " << v.name << "\n";
  }
  os << "End\n";

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw io_error("cannot write LP file: " + path);
  file << os.str();
  if (!file.good()) throw io_error("short write to LP file: " + path);
  return path;
}

std::vector<double> parse_solution_file(const MilpModel& model, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MumeError(ErrorCode::ExternalSolver, "cannot open solution file: " + path);
  std::unordered_map<std::string, std::int32_t> index;
  index.reserve(model.vars.size());
  for (std::size_t i = 0; i < model.vars.size(); ++i)
    index.emplace(model.vars[i].name, static_cast<std::int32_t>(i));

  std::vector<double> x(model.vars.size(), 0.0);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#' || line[0] == '\\') continue;
    std::istringstream ls(line);
    std::string name;
    double value = 0.0;
    if (!(ls >> name >> value))
      throw MumeError(ErrorCode::ExternalSolver,
                      "unparsable solution line " + std::to_string(line_no) + ": " + line);
    auto it = index.find(name);
    if (it != index.end()) x[static_cast<std::size_t>(it->second)] = value;
    // Unknown names (slacks, solver internals) are ignored.
  }
  return x;
}

}  // namespace mumenet
