#include "fraceig/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace fraceig::io {

namespace {

Point point_from(const json& j, int dim, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw InvalidInput(std::string(what) + " must be an array of length dim");
  Point pt{0.0, 0.0};
  for (int d = 0; d < dim; ++d) pt[d] = j.at(d).get<double>();
  return pt;
}

Shape shape_from_json(const json& j, int dim) {
  const auto type = j.at("type").get<std::string>();
  if (type == "interval") return Shape::interval(j.at("a").get<double>(), j.at("b").get<double>());
  if (type == "box") return Shape::box(point_from(j.at("lo"), dim, "lo"), point_from(j.at("hi"), dim, "hi"));
  if (type == "ball") return Shape::ball(point_from(j.at("center"), dim, "center"), j.at("radius").get<double>());
  if (type == "union") {
    std::vector<Shape> parts;
    for (const auto& part : j.at("parts")) parts.push_back(shape_from_json(part, dim));
    return Shape::union_of(std::move(parts));
  }
  if (type == "mask") {
    const auto& counts = j.at("counts");
    if (!counts.is_array() || static_cast<int>(counts.size()) != dim)
      throw InvalidInput("counts must be an array of length dim");
    Index c{counts.at(0).get<int>(), dim == 2 ? counts.at(1).get<int>() : 1};
    std::vector<std::uint8_t> cells;
    for (const auto& v : j.at("cells")) cells.push_back(v.get<int>() != 0 ? 1 : 0);
    return Shape::mask(point_from(j.at("origin"), dim, "origin"), c, std::move(cells));
  }
  throw InvalidInput("unknown shape type: " + type);
}

json shape_to_json(const Shape& s, int dim) {
  auto pt = [dim](const Point& p) {
    json a = json::array();
    for (int d = 0; d < dim; ++d) a.push_back(p[d]);
    return a;
  };
  switch (s.kind) {
    case Shape::Kind::Interval:
      return {{"type", "interval"}, {"a", s.lo[0]}, {"b", s.hi[0]}};
    case Shape::Kind::Box:
      return {{"type", "box"}, {"lo", pt(s.lo)}, {"hi", pt(s.hi)}};
    case Shape::Kind::Ball:
      return {{"type", "ball"}, {"center", pt(s.center)}, {"radius", s.radius}};
    case Shape::Kind::Union: {
      json parts = json::array();
      for (const auto& part : s.parts) parts.push_back(shape_to_json(part, dim));
      return {{"type", "union"}, {"parts", parts}};
    }
    case Shape::Kind::Mask: {
      json counts = json::array();
      for (int d = 0; d < dim; ++d) counts.push_back(s.counts[d]);
      json cells = json::array();
      for (auto c : s.cells) cells.push_back(static_cast<int>(c));
      return {{"type", "mask"}, {"origin", pt(s.origin)}, {"counts", counts}, {"cells", cells}};
    }
  }
  return {};
}

void check_header(int dim, double h, double t, Index lo, Index counts, std::size_t m, const GridDomain& host) {
  const bool ok = dim == host.dim() && std::abs(h - host.h()) <= 1e-14 * host.h() &&
                  std::abs(t - host.t()) <= 1e-14 * host.t() && lo == host.box_lo() && counts == host.box_counts() &&
                  m == host.size();
  if (!ok) throw InvalidInput("grid function header does not match the domain");
}

template <class T>
void put(std::ostream& os, T v) {
  static_assert(std::endian::native == std::endian::little, "binary format assumes a little-endian host");
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  os.write(buf, sizeof(T));
}

template <class T>
T get(std::istream& is) {
  char buf[sizeof(T)];
  if (!is.read(buf, sizeof(T))) throw InvalidInput("truncated binary grid function");
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

}  // namespace

DomainSpec domain_spec_from_json(const json& j) {
  try {
    DomainSpec spec;
    spec.dim = j.at("dim").get<int>();
    if (spec.dim != 1 && spec.dim != 2) throw InvalidInput("dim must be 1 or 2");
    spec.h = j.at("h").get<double>();
    spec.shape = shape_from_json(j.at("shape"), spec.dim);
    return spec;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed domain spec: ") + e.what());
  }
}

json domain_spec_to_json(const DomainSpec& spec) {
  return {{"dim", spec.dim}, {"h", spec.h}, {"shape", shape_to_json(spec.shape, spec.dim)}};
}

DomainSpec load_domain_spec(const std::string& path) { return domain_spec_from_json(read_json_file(path)); }

json grid_function_to_json(const GridFunction& u) {
  const GridDomain& d = u.host();
  json origin = json::array(), lo = json::array(), counts = json::array();
  for (int k = 0; k < d.dim(); ++k) {
    origin.push_back(d.origin()[k]);
    lo.push_back(d.box_lo()[k]);
    counts.push_back(d.box_counts()[k]);
  }
  return {{"dim", d.dim()}, {"h", d.h()},           {"t", d.t()},
          {"origin", origin}, {"lo", lo},           {"counts", counts},
          {"values", std::vector<double>(u.values().begin(), u.values().end())}};
}

GridFunction grid_function_from_json(const json& j, const DomainPtr& host) {
  try {
    const int dim = j.at("dim").get<int>();
    Index lo{0, 0}, counts{1, 1};
    for (int k = 0; k < dim && k < 2; ++k) {
      lo[k] = j.at("lo").at(k).get<int>();
      counts[k] = j.at("counts").at(k).get<int>();
    }
    auto values = j.at("values").get<std::vector<double>>();
    check_header(dim, j.at("h").get<double>(), j.at("t").get<double>(), lo, counts, values.size(), *host);
    return {host, std::move(values)};
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed grid function: ") + e.what());
  }
}

void write_grid_function_binary(std::ostream& os, const GridFunction& u) {
  const GridDomain& d = u.host();
  os.write("FGF1", 4);
  put<std::int32_t>(os, d.dim());
  put<double>(os, d.h());
  put<double>(os, d.t());
  put<double>(os, d.origin()[0]);
  put<double>(os, d.origin()[1]);
  put<std::int32_t>(os, d.box_lo()[0]);
  put<std::int32_t>(os, d.box_lo()[1]);
  put<std::int32_t>(os, d.box_counts()[0]);
  put<std::int32_t>(os, d.box_counts()[1]);
  put<std::uint64_t>(os, u.values().size());
  for (double v : u.values()) put<double>(os, v);
}

GridFunction read_grid_function_binary(std::istream& is, const DomainPtr& host) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "FGF1", 4) != 0) throw InvalidInput("not a binary grid function");
  const int dim = get<std::int32_t>(is);
  const double h = get<double>(is);
  const double t = get<double>(is);
  (void)get<double>(is);
  (void)get<double>(is);
  Index lo{get<std::int32_t>(is), get<std::int32_t>(is)};
  Index counts{get<std::int32_t>(is), get<std::int32_t>(is)};
  const auto m = get<std::uint64_t>(is);
  check_header(dim, h, t, lo, counts, m, *host);
  std::vector<double> values(m);
  for (auto& v : values) v = get<double>(is);
  return {host, std::move(values)};
}

json eigenpair_to_json(const Eigenpair& e, const FracParams& params, const GridDomain& dom) {
  return {{"lambda", e.lambda},
          {"s", params.s()},
          {"p", params.p()},
          {"t", params.t()},
          {"h", dom.h()},
          {"R", dom.diameter()},
          {"iterations", e.iterations},
          {"residual", e.residual},
          {"noise_limited", e.noise_limited},
          {"u", std::vector<double>(e.eigenfunction.values().begin(), e.eigenfunction.values().end())}};
}

void write_trace_csv(std::ostream& os, const std::vector<TraceEntry>& trace) {
  os << "iter,lambda,residual\n" << std::setprecision(17);
  for (std::size_t k = 0; k < trace.size(); ++k) os << k << ',' << trace[k].lambda << ',' << trace[k].residual << '\n';
}

DirichletProblem problem_from_json(const json& j, const DomainPtr& host) {
  try {
    const double t = j.contains("t") ? j.at("t").get<double>() : host->t();
    FracParams params(j.at("s").get<double>(), j.at("p").get<double>(), t);
    std::vector<double> f;
    const auto& jf = j.at("f");
    if (jf.is_number()) {
      f.assign(host->omega_count(), jf.get<double>());
    } else {
      f = jf.get<std::vector<double>>();
      if (f.size() != host->omega_count()) throw InvalidInput("f must have one value per Omega cell");
    }
    std::optional<PairFunction> F;
    if (j.contains("F") && !(j.at("F").is_string() && j.at("F").get<std::string>() == "none")) {
      auto values = j.at("F").get<std::vector<double>>();
      F.emplace(host, std::move(values));
    }
    return {host, params, std::move(f), std::move(F)};
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed problem file: ") + e.what());
  }
}

json sweep_to_json(const SweepReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json jr = {{"s", row.s},
               {"lambda", row.lambda},
               {"weighted_lambda", row.weighted_lambda},
               {"dist_to_base", row.dist_to_base},
               {"iters", row.iterations},
               {"residual", row.residual},
               {"noise_limited", row.noise_limited},
               {"ok", row.ok}};
    if (!row.ok) jr["error"] = row.error;
    rows.push_back(jr);
  }
  auto gaps = [](const std::vector<LimitGap>& g) {
    json a = json::array();
    for (const auto& x : g) a.push_back({{"delta", x.delta}, {"lambda_gap", x.lambda_gap}, {"dist", x.dist_to_base}});
    return a;
  };
  return {{"s_base", r.s_base},
          {"p", r.p},
          {"t", r.t},
          {"h", r.h},
          {"R", r.diameter},
          {"dim", r.dim},
          {"rows", rows},
          {"weighted_violations", r.violations},
          {"worst_weighted_drop", r.worst_violation},
          {"right_limit", gaps(right_limit_gaps(r))},
          {"left_limit_diagnostic", gaps(left_limit_gaps(r))}};
}

void write_sweep_csv(std::ostream& os, const SweepReport& r) {
  os << "s,lambda,weighted_lambda,dist_to_base,iters,residual\n" << std::setprecision(17);
  for (const auto& row : r.rows)
    os << row.s << ',' << row.lambda << ',' << row.weighted_lambda << ',' << row.dist_to_base << ','
       << row.iterations << ',' << row.residual << '\n';
}

void write_sweep_plot(std::ostream& os, const SweepReport& r) {
  os << "# s lambda\n" << std::setprecision(17);
  for (const auto& row : r.rows)
    if (row.ok) os << row.s << ' ' << row.lambda << '\n';
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput("malformed JSON in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

}  // namespace fraceig::io
