#include "json_io.h"

#include <cmath>
#include <limits>

#include "ftvn/error.h"

namespace ftvn::cli {

const Json& field(const Json& obj, const std::string& key, const std::string& at) {
  const Json* f = optional_field(obj, key, at);
  if (!f) throw SchemaError(at + "/" + key, "missing required field '" + key + "'");
  return *f;
}

const Json* optional_field(const Json& obj, const std::string& key, const std::string& at) {
  if (!obj.is_object()) throw SchemaError(at.empty() ? "/" : at, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return nullptr;
  return &*it;
}

double read_real(const Json& j, const std::string& at) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw SchemaError(at, "expected a real number");
}

int read_int(const Json& j, const std::string& at) {
  if (!j.is_number_integer()) throw SchemaError(at, "expected an integer");
  return j.get<int>();
}

bool read_bool(const Json& j, const std::string& at) {
  if (!j.is_boolean()) throw SchemaError(at, "expected a boolean");
  return j.get<bool>();
}

std::string read_string(const Json& j, const std::string& at) {
  if (!j.is_string()) throw SchemaError(at, "expected a string");
  return j.get<std::string>();
}

Json write_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json write_reals(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(write_real(v(i)));
  return a;
}

SpecVector read_spec(const Json& j, const std::string& at) {
  if (!j.is_array() || j.empty()) throw SchemaError(at, "expected a non-empty array of reals");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<int>(i)) = read_real(j[i], at + "/" + std::to_string(i));
  }
  return SpecVector(std::move(v));
}

std::vector<SpecVector> read_spec_list(const Json& j, const std::string& at) {
  if (!j.is_array()) throw SchemaError(at, "expected an array of arrays");
  std::vector<SpecVector> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_spec(j[i], at + "/" + std::to_string(i)));
  return out;
}

Json write_spec(const SpecVector& w) { return write_reals(w.values); }

Point read_point(const System& sys, const Json& j, const std::string& at) {
  const std::string kind = read_string(field(j, "kind", at), at + "/kind");
  const Json& data = field(j, "data", at);
  const std::string dat = at + "/data";
  switch (sys.kind()) {
    case SystemKind::kSorted:
    case SystemKind::kNorm: {
      if (kind != "vector") throw SchemaError(at + "/kind", sys.descriptor() + " expects kind 'vector'");
      Point x(read_spec(data, dat).values);
      check_layout(sys, x);
      return x;
    }
    case SystemKind::kSymmetric: {
      if (kind != "symmetric") throw SchemaError(at + "/kind", sys.descriptor() + " expects kind 'symmetric'");
      const int n = sys.order();
      if (!data.is_array() || static_cast<int>(data.size()) != n) {
        throw SchemaError(dat, "expected " + std::to_string(n) + " rows");
      }
      Eigen::MatrixXd m(n, n);
      for (int i = 0; i < n; ++i) {
        const std::string row_at = dat + "/" + std::to_string(i);
        const SpecVector row = read_spec(data[i], row_at);
        if (row.size() != n) throw SchemaError(row_at, "expected " + std::to_string(n) + " columns");
        m.row(i) = row.values.transpose();
      }
      return symmetric_point(m);
    }
    case SystemKind::kProduct: {
      if (kind != "pair") throw SchemaError(at + "/kind", sys.descriptor() + " expects kind 'pair'");
      if (!data.is_array() || data.size() != 2) throw SchemaError(dat, "expected two blocks");
      return pair_point(read_point(sys.left(), data[0], dat + "/0"),
                        read_point(sys.right(), data[1], dat + "/1"));
    }
  }
  throw SchemaError(at, "unsupported system");
}

Json write_point(const System& sys, const Point& x) {
  Json j;
  switch (sys.kind()) {
    case SystemKind::kSorted:
    case SystemKind::kNorm:
      j["kind"] = "vector";
      j["data"] = write_reals(x.coords);
      break;
    case SystemKind::kSymmetric: {
      const Eigen::MatrixXd m = to_matrix(sys, x);
      Json rows = Json::array();
      for (int i = 0; i < m.rows(); ++i) rows.push_back(write_reals(m.row(i).transpose()));
      j["kind"] = "symmetric";
      j["data"] = rows;
      break;
    }
    case SystemKind::kProduct: {
      auto [a, b] = split(sys, x);
      j["kind"] = "pair";
      j["data"] = Json::array({write_point(sys.left(), a), write_point(sys.right(), b)});
      break;
    }
  }
  return j;
}

SpectralSet read_set(const System& sys, const Json& j, const std::string& at) {
  const std::string variant = read_string(field(j, "variant", at), at + "/variant");
  auto checked = [&](const std::vector<SpecVector>& pts, const std::string& key) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (pts[i].size() != sys.dim_w()) {
        throw SchemaError(at + "/" + key + "/" + std::to_string(i),
                          "expected length " + std::to_string(sys.dim_w()));
      }
    }
    return pts;
  };
  if (variant == "orbit_union") {
    return make_orbit_union(sys, checked(read_spec_list(field(j, "points", at), at + "/points"), "points"));
  }
  if (variant == "maj_hull") {
    return make_hull(sys, checked(read_spec_list(field(j, "generators", at), at + "/generators"),
                                  "generators"));
  }
  if (variant == "sublevel") {
    const std::string fn = read_string(field(j, "fn", at), at + "/fn");
    const double level = read_real(field(j, "level", at), at + "/level");
    if (fn == "max_abs") return make_sublevel(max_abs_level(), level);
    if (fn == "euclidean") return make_sublevel(euclidean_level(), level);
    if (fn == "sum_abs") return make_sublevel(sum_abs_level(), level);
    throw SchemaError(at + "/fn", "unknown level function '" + fn + "'");
  }
  if (variant == "interval") {
    Interval iv;
    iv.lo = read_real(field(j, "lo", at), at + "/lo");
    iv.hi = read_real(field(j, "hi", at), at + "/hi");
    if (const Json* f = optional_field(j, "lo_closed", at)) iv.lo_closed = read_bool(*f, at + "/lo_closed");
    if (const Json* f = optional_field(j, "hi_closed", at)) iv.hi_closed = read_bool(*f, at + "/hi_closed");
    SpectralSet q = make_interval(iv);
    if (const Json* f = optional_field(j, "symmetrized", at)) {
      std::get<IntervalSet>(q).symmetrized = read_bool(*f, at + "/symmetrized");
    }
    check_set(sys, q);
    return q;
  }
  throw SchemaError(at + "/variant", "unknown set variant '" + variant + "'");
}

SpectralFn read_fn(const System& sys, const Json& j, const std::string& at) {
  const std::string fn = read_string(field(j, "fn", at), at + "/fn");
  if (fn == "quadratic") return SpectralFn::Quadratic();
  if (fn == "zero") return SpectralFn::Zero(sys.dim_w());
  if (fn == "max") return SpectralFn::MaxComponent();
  if (fn == "min") return SpectralFn::MinComponent();
  if (fn == "linear") {
    SpecVector b = read_spec(field(j, "b", at), at + "/b");
    if (b.size() != sys.dim_w()) throw SchemaError(at + "/b", "expected length " + std::to_string(sys.dim_w()));
    return SpectralFn::Linear(std::move(b));
  }
  if (fn == "sum_k_largest") {
    const int k = read_int(field(j, "k", at), at + "/k");
    if (k < 1 || k > sys.dim_w()) throw SchemaError(at + "/k", "k must lie in 1..dim W");
    return SpectralFn::SumKLargest(k);
  }
  if (fn == "indicator") return SpectralFn::IndicatorOf(read_set(sys, field(j, "set", at), at + "/set"));
  if (fn == "support") return SpectralFn::SupportOf(read_set(sys, field(j, "set", at), at + "/set"));
  throw SchemaError(at + "/fn", "unknown function '" + fn + "'");
}

}  // namespace ftvn::cli
