#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "fraceig/asymptotics.hpp"
#include "fraceig/dirichlet.hpp"
#include "fraceig/domain.hpp"
#include "fraceig/eigenpair.hpp"

namespace fraceig::io {

using json = nlohmann::json;

/// {"dim":1|2, "h":number, "shape":{"type":"interval"|"box"|"ball"|"union"|"mask", ...}}
///   interval: "a", "b"           box: "lo", "hi"        ball: "center", "radius"
///   union: "parts": [shape...]   mask: "origin", "counts", "cells" (0/1, x fastest)
DomainSpec domain_spec_from_json(const json& j);
json domain_spec_to_json(const DomainSpec& spec);
DomainSpec load_domain_spec(const std::string& path);

/// {"dim","h","t","origin","lo","counts","values"}; values run over the ball
/// cells in host order.
json grid_function_to_json(const GridFunction& u);
/// Rebuilds a function on `host`; throws InvalidInput when the header disagrees.
GridFunction grid_function_from_json(const json& j, const DomainPtr& host);

/// Little-endian binary: "FGF1", int32 dim, f64 h, f64 t, f64 origin[2],
/// int32 lo[2], int32 counts[2], u64 M, then M float64 values.
void write_grid_function_binary(std::ostream& os, const GridFunction& u);
GridFunction read_grid_function_binary(std::istream& is, const DomainPtr& host);

json eigenpair_to_json(const Eigenpair& e, const FracParams& params, const GridDomain& dom);
/// iter,lambda,residual
void write_trace_csv(std::ostream& os, const std::vector<TraceEntry>& trace);

/// {"f": [per Omega cell] | number, "F": [M*M] | "none", "s", "p", "t"}
DirichletProblem problem_from_json(const json& j, const DomainPtr& host);

json sweep_to_json(const SweepReport& r);
/// s,lambda,weighted_lambda,dist_to_base,iters,residual
void write_sweep_csv(std::ostream& os, const SweepReport& r);
/// Two columns "s lambda", converged rows only.
void write_sweep_plot(std::ostream& os, const SweepReport& r);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace fraceig::io
