#include "ricci/io.hpp"

#include <fstream>
#include <sstream>

#include "ricci/error.hpp"
#include "ricci/scalar.hpp"

namespace ricci {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path.string());
  return in;
}

// Doubles in CSV use the same shortest round-trip form as JSON.
std::string csv_number(double v) { return format_double(v); }

}  // namespace

StateGraph read_edge_list(std::istream& in) {
  std::vector<std::pair<StateIndex, StateIndex>> edges;
  std::string line;
  std::size_t line_no = 0;
  StateIndex largest = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    long long u = 0;
    long long v = 0;
    if (!(fields >> u)) continue;
    std::string rest;
    if (!(fields >> v) || (fields >> rest) || u < 0 || v < 0 || u > 0x7fffffff || v > 0x7fffffff) {
      throw Error(ErrorKind::InvalidInput, "edge list line " + std::to_string(line_no) + ": expected 'u v'");
    }
    edges.emplace_back(static_cast<StateIndex>(u), static_cast<StateIndex>(v));
    largest = std::max({largest, static_cast<StateIndex>(u), static_cast<StateIndex>(v)});
    any = true;
  }
  StateGraph g(any ? largest + 1 : 0);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

StateGraph read_edge_list_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_edge_list(in);
}

Json read_json_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, path.string() + ": " + e.what());
  }
}

template <Scalar T>
Json scalar_to_json(const T& value) {
  if constexpr (ScalarTraits<T>::exact) {
    return to_string(value);
  } else {
    return value;
  }
}

template <Scalar T>
T scalar_from_json(const Json& value) {
  if (value.is_string()) {
    const Rational q = parse_rational(value.get<std::string>());
    return scalar_from<T>(q);
  }
  if (value.is_number_integer()) return scalar_from_int<T>(value.get<long>());
  if (value.is_number()) {
    if constexpr (ScalarTraits<T>::exact) {
      return parse_rational(format_double(value.get<double>()));
    } else {
      return value.get<double>();
    }
  }
  throw Error(ErrorKind::InvalidInput, "expected a number or \"a/b\" string, got " + value.dump());
}

template <Scalar T>
Json distribution_to_json(const SparseDistribution<T>& m) {
  Json out = Json::array();
  for (const auto& [x, w] : m.entries()) out.push_back(Json::array({x, scalar_to_json(w)}));
  return out;
}

template <Scalar T>
SparseDistribution<T> distribution_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "distribution must be an array of [state, weight] pairs");
  std::vector<std::pair<StateIndex, T>> entries;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned()) {
      throw Error(ErrorKind::InvalidInput, "bad distribution entry " + e.dump());
    }
    entries.emplace_back(e[0].get<StateIndex>(), scalar_from_json<T>(e[1]));
  }
  return SparseDistribution<T>(std::move(entries));
}

template <Scalar T>
Json kernel_to_json(const WalkKernel<T>& m) {
  Json out = Json::array();
  for (const auto& row : m.rows()) out.push_back(distribution_to_json(row));
  return out;
}

template <Scalar T>
WalkKernel<T> kernel_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "kernel must be an array of rows");
  std::vector<SparseDistribution<T>> rows;
  for (const auto& row : j) rows.push_back(distribution_from_json<T>(row));
  return WalkKernel<T>(std::move(rows));
}

template <Scalar T>
Json coupling_to_json(const Coupling<T>& a) {
  Json out = Json::array();
  for (const auto& c : a.cells) out.push_back(Json::array({c.x, c.y, scalar_to_json(c.weight)}));
  return out;
}

template <Scalar T>
Coupling<T> coupling_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "coupling must be an array of [x, y, weight] triples");
  Coupling<T> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
      throw Error(ErrorKind::InvalidInput, "bad coupling entry " + e.dump());
    }
    out.cells.push_back({e[0].get<StateIndex>(), e[1].get<StateIndex>(), scalar_from_json<T>(e[2])});
  }
  return out;
}

template <Scalar T>
Json transport_to_json(const TransportResult<T>& r) {
  Json out;
  out["distance"] = scalar_to_json(r.distance);
  out["coupling"] = coupling_to_json(r.optimal_coupling);
  out["dual_potential"] = r.dual_potential.values;
  return out;
}

template <Scalar T>
Json curvature_report_to_json(const CurvatureReport<T>& report, bool include_certificates) {
  Json out;
  Json edges = Json::array();
  for (const auto& e : report.per_edge) edges.push_back(Json::array({e.x, e.y, scalar_to_json(e.kappa)}));
  out["edges"] = std::move(edges);
  out["global_lb"] = scalar_to_json(report.global_lb);
  out["argmin_edge"] = Json::array({report.argmin_edge.first, report.argmin_edge.second});
  out["argmin_certificate"] = transport_to_json(report.argmin_certificate);
  if (report.alpha) out["alpha"] = scalar_to_json(*report.alpha);
  out["pairs_checked"] = report.pairs_checked;
  if (report.min_pair_kappa) out["min_pair_kappa"] = scalar_to_json(*report.min_pair_kappa);
  if (include_certificates) {
    Json certs = Json::array();
    for (std::size_t i = 0; i < report.certificates.size(); ++i) {
      Json c = transport_to_json(report.certificates[i]);
      c["edge"] = Json::array({report.per_edge[i].x, report.per_edge[i].y});
      certs.push_back(std::move(c));
    }
    out["certificates"] = std::move(certs);
  }
  return out;
}

Json model_to_json(const ConfigurationModel& model) {
  Json out;
  out["model"] = std::string(to_string(model.kind()));
  out["description"] = model.describe();
  const auto& p = model.params();
  Json params;
  params["n"] = p.n;
  switch (model.kind()) {
    case ModelKind::Gnp: params["p"] = to_string(p.p); break;
    case ModelKind::GnM: params["M"] = p.M; break;
    case ModelKind::Hypergraph:
      params["k"] = p.k;
      params["M"] = p.M;
      break;
    case ModelKind::DOutRegular: params["d"] = p.d; break;
    case ModelKind::PermInsertion: break;
    case ModelKind::PermTransposition: params["lazy"] = to_string(p.lazy); break;
  }
  out["params"] = std::move(params);
  if (const auto count = model.state_count()) {
    out["state_count"] = *count;
  } else {
    out["state_count"] = nullptr;
  }
  out["state_count_real"] = model.state_count_real();
  if (const auto kappa = model.claimed_kappa_lb()) {
    out["claimed_kappa_lb"] = to_string(*kappa);
  } else {
    out["claimed_kappa_lb"] = nullptr;
  }
  return out;
}

Json space_to_json(const GeometrizedSpace& space, bool details) {
  Json out = model_to_json(space.model());
  out["edge_count"] = space.graph().edge_count();
  if (details) {
    Json states = Json::array();
    Json nu = Json::array();
    for (StateIndex x = 0; x < space.state_count(); ++x) {
      states.push_back(space.model().format(space.configuration(x)));
      nu.push_back(to_string(space.claimed_nu(x)));
    }
    Json edges = Json::array();
    for (auto [x, y] : space.graph().edges()) edges.push_back(Json::array({x, y}));
    out["states"] = std::move(states);
    out["edges"] = std::move(edges);
    out["kernel"] = kernel_to_json(space.kernel());
    out["claimed_nu"] = std::move(nu);
  }
  return out;
}

Json tail_report_to_json(const TailReport& report) {
  Json out;
  out["model"] = report.model;
  out["observable"] = report.observable;
  out["lipschitz"] = report.lipschitz;
  out["mean"] = report.mean;
  out["mean_exact"] = report.mean_exact;
  if (report.mean_rational) out["mean_rational"] = to_string(*report.mean_rational);
  out["kappa"] = report.kappa;
  out["kappa_source"] = report.kappa_source;
  if (report.exact_kappa) out["exact_kappa"] = *report.exact_kappa;
  out["samples"] = report.samples;
  out["seed"] = report.seed;
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    Json row;
    row["t"] = r.t;
    row["hits"] = r.hits;
    row["empirical"] = r.empirical;
    row["ci_lo"] = r.ci.lo;
    row["ci_hi"] = r.ci.hi;
    row["bound_seven"] = r.bound_seven;
    row["bound_five"] = r.bound_five;
    row["bound_exact"] = r.bound_exact;
    if (r.bound_seven_exact_kappa) row["bound_seven_exact_kappa"] = *r.bound_seven_exact_kappa;
    rows.push_back(std::move(row));
  }
  out["rows"] = std::move(rows);
  out["envelope_holds"] = report.envelope_holds;
  return out;
}

void write_tail_csv(std::ostream& out, const TailReport& report) {
  out << "t,empirical,ci_lo,ci_hi,bound_seven,bound_five,bound_exact\n";
  for (const auto& r : report.rows) {
    out << csv_number(r.t) << ',' << csv_number(r.empirical) << ',' << csv_number(r.ci.lo) << ','
        << csv_number(r.ci.hi) << ',' << csv_number(r.bound_seven) << ',' << csv_number(r.bound_five) << ','
        << csv_number(r.bound_exact) << '\n';
  }
}

void write_regimes_csv(std::ostream& out, const std::vector<RegimeRow>& rows) {
  out << "t,exact,seven,five,beyond_cutoff\n";
  for (const auto& r : rows) {
    out << csv_number(r.t) << ',' << csv_number(r.exact) << ',' << csv_number(r.seven) << ',' << csv_number(r.five)
        << ',' << (r.beyond_cutoff ? 1 : 0) << '\n';
  }
}

#define RICCI_IO_INSTANTIATE(T)                                                                   \
  template Json scalar_to_json<T>(const T&);                                                      \
  template T scalar_from_json<T>(const Json&);                                                    \
  template Json distribution_to_json<T>(const SparseDistribution<T>&);                            \
  template SparseDistribution<T> distribution_from_json<T>(const Json&);                          \
  template Json kernel_to_json<T>(const WalkKernel<T>&);                                          \
  template WalkKernel<T> kernel_from_json<T>(const Json&);                                        \
  template Json coupling_to_json<T>(const Coupling<T>&);                                          \
  template Coupling<T> coupling_from_json<T>(const Json&);                                        \
  template Json transport_to_json<T>(const TransportResult<T>&);                                  \
  template Json curvature_report_to_json<T>(const CurvatureReport<T>&, bool);

RICCI_IO_INSTANTIATE(double)
RICCI_IO_INSTANTIATE(Rational)

#undef RICCI_IO_INSTANTIATE

}  // namespace ricci
