#include "minlab/state_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace minlab {

using nlohmann::json;

namespace {

Complex parse_complex(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw FormatError("complex entries must be [re, im] number pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

}  // namespace

StateInput parse_state_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("state file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("state file must hold a JSON object");
  if (!doc.contains("dims") || !doc["dims"].is_array()) throw FormatError("state file needs a 'dims' array");

  std::vector<std::size_t> dims;
  for (const auto& d : doc["dims"]) {
    if (!d.is_number_integer() || d.get<long long>() < 2) throw FormatError("dims must be integers >= 2");
    dims.push_back(d.get<std::size_t>());
  }
  DimensionProfile profile(dims);
  if (profile.total() > 4096) throw FormatError("total dimension above 4096 is not supported");
  const auto n = static_cast<Eigen::Index>(profile.total());

  const std::string kind = doc.value("kind", "");
  try {
    if (kind == "pure") {
      const auto& amps = doc.at("amplitudes");
      if (!amps.is_array() || static_cast<Eigen::Index>(amps.size()) != n) {
        throw FormatError("'amplitudes' must list one entry per basis state");
      }
      CVector v(n);
      for (Eigen::Index i = 0; i < n; ++i) v(i) = parse_complex(amps[static_cast<std::size_t>(i)]);
      return PureState(std::move(v), std::move(profile));
    }
    if (kind == "mixed") {
      const auto& rows = doc.at("matrix");
      if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n) {
        throw FormatError("'matrix' must have one row per basis state");
      }
      CMatrix m(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
          throw FormatError("'matrix' rows must be square");
        }
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = parse_complex(row[static_cast<std::size_t>(j)]);
      }
      return DensityOperator::validated(std::move(m), std::move(profile));
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed state file: ") + e.what());
  } catch (const NumericalError& e) {
    throw FormatError(std::string("state is not physical: ") + e.what());
  }
  throw FormatError("'kind' must be \"pure\" or \"mixed\"");
}

StateInput load_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open state file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_json(buf.str());
}

std::string state_to_json(const StateInput& state) {
  json doc;
  doc["dims"] = profile_of(state).dims();
  if (const auto* psi = std::get_if<PureState>(&state)) {
    doc["kind"] = "pure";
    json amps = json::array();
    for (Eigen::Index i = 0; i < psi->amplitudes().size(); ++i) amps.push_back(complex_json(psi->amplitudes()(i)));
    doc["amplitudes"] = std::move(amps);
  } else {
    const auto& m = std::get<DensityOperator>(state).matrix();
    doc["kind"] = "mixed";
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
      rows.push_back(std::move(row));
    }
    doc["matrix"] = std::move(rows);
  }
  return doc.dump();
}

DensityOperator as_density(const StateInput& state) {
  if (const auto* psi = std::get_if<PureState>(&state)) return psi->density();
  return std::get<DensityOperator>(state);
}

const DimensionProfile& profile_of(const StateInput& state) {
  return std::visit([](const auto& s) -> const DimensionProfile& { return s.profile(); }, state);
}

}  // namespace minlab
