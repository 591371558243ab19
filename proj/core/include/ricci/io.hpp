#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"
#include "ricci/curvature.hpp"
#include "ricci/distribution.hpp"
#include "ricci/experiments.hpp"
#include "ricci/geometrize.hpp"
#include "ricci/transport.hpp"

namespace ricci {

using Json = nlohmann::ordered_json;

/// One "u v" pair per line, 0-based, '#' starts a comment. "u u" is a loop.
/// The state count is one more than the largest index.
StateGraph read_edge_list(std::istream& in);
StateGraph read_edge_list_file(const std::filesystem::path& path);

Json read_json_file(const std::filesystem::path& path);

/// Rationals serialize as "a/b" strings; doubles as numbers. Parsing accepts
/// either form in both modes (decimal numbers are read exactly in rational
/// mode).
template <Scalar T>
Json scalar_to_json(const T& value);
template <Scalar T>
T scalar_from_json(const Json& value);

/// [[state, weight], ...]
template <Scalar T>
Json distribution_to_json(const SparseDistribution<T>& m);
template <Scalar T>
SparseDistribution<T> distribution_from_json(const Json& j);

/// Array of rows, each a distribution.
template <Scalar T>
Json kernel_to_json(const WalkKernel<T>& m);
template <Scalar T>
WalkKernel<T> kernel_from_json(const Json& j);

/// [[x, y, weight], ...]
template <Scalar T>
Json coupling_to_json(const Coupling<T>& a);
template <Scalar T>
Coupling<T> coupling_from_json(const Json& j);

template <Scalar T>
Json transport_to_json(const TransportResult<T>& r);

/// {edges: [[x,y,kappa]...], global_lb, argmin_edge, argmin_certificate,
/// certificates?, ...}
template <Scalar T>
Json curvature_report_to_json(const CurvatureReport<T>& report, bool include_certificates);

/// Model, parameters and counts; explicit edges, kernel and claimed ν when
/// `details` is set.
Json space_to_json(const GeometrizedSpace& space, bool details);
Json model_to_json(const ConfigurationModel& model);

Json tail_report_to_json(const TailReport& report);
/// t,empirical,ci_lo,ci_hi,bound_seven,bound_five,bound_exact
void write_tail_csv(std::ostream& out, const TailReport& report);
/// t,exact,seven,five,beyond_cutoff
void write_regimes_csv(std::ostream& out, const std::vector<RegimeRow>& rows);

}  // namespace ricci
