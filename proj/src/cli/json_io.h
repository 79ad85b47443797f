#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ftvn/convex.h"
#include "ftvn/spectral_sets.h"
#include "ftvn/system.h"

namespace ftvn::cli {

using Json = nlohmann::ordered_json;

// Malformed request; pointer names the offending field.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string pointer, const std::string& what)
      : std::runtime_error(what), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

// Field access with pointer tracking.
const Json& field(const Json& obj, const std::string& key, const std::string& at);
const Json* optional_field(const Json& obj, const std::string& key, const std::string& at);

double read_real(const Json& j, const std::string& at);
int read_int(const Json& j, const std::string& at);
bool read_bool(const Json& j, const std::string& at);
std::string read_string(const Json& j, const std::string& at);

Json write_real(double v);
Json write_reals(const Eigen::VectorXd& v);

SpecVector read_spec(const Json& j, const std::string& at);
std::vector<SpecVector> read_spec_list(const Json& j, const std::string& at);
Json write_spec(const SpecVector& w);

Point read_point(const System& sys, const Json& j, const std::string& at);
Json write_point(const System& sys, const Point& x);

SpectralSet read_set(const System& sys, const Json& j, const std::string& at);
SpectralFn read_fn(const System& sys, const Json& j, const std::string& at);

}  // namespace ftvn::cli
