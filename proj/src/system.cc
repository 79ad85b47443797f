#include "ftvn/system.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ftvn/error.h"

namespace ftvn {

struct System::Node {
  SystemKind kind;
  int order = 0;
  int dim_v = 0;
  int dim_w = 0;
  std::shared_ptr<const Node> left;
  std::shared_ptr<const Node> right;
  Eigen::VectorXd weights;
  std::string descriptor;
  // Children wrapped as handles so left()/right() can return references.
  std::unique_ptr<System> left_handle;
  std::unique_ptr<System> right_handle;
};

namespace {

void require_positive(int n, const char* what) {
  if (n < 1) throw DomainError(std::string(what) + " dimension must be >= 1");
}

}  // namespace

System System::Sorted(int n) {
  require_positive(n, "sorted");
  auto node = std::make_shared<Node>();
  node->kind = SystemKind::kSorted;
  node->order = n;
  node->dim_v = n;
  node->dim_w = n;
  node->weights = Eigen::VectorXd::Ones(n);
  node->descriptor = "sorted:" + std::to_string(n);
  return System(std::move(node));
}

System System::Symmetric(int n) {
  require_positive(n, "sym");
  if (n > 64) throw CapabilityError("sym:n supports n <= 64");
  auto node = std::make_shared<Node>();
  node->kind = SystemKind::kSymmetric;
  node->order = n;
  node->dim_v = n * (n + 1) / 2;
  node->dim_w = n;
  node->weights = Eigen::VectorXd::Constant(node->dim_v, 2.0);
  for (int i = 0; i < n; ++i) node->weights(packed_index(n, i, i)) = 1.0;
  node->descriptor = "sym:" + std::to_string(n);
  return System(std::move(node));
}

System System::Norm(int d) {
  require_positive(d, "norm");
  auto node = std::make_shared<Node>();
  node->kind = SystemKind::kNorm;
  node->order = d;
  node->dim_v = d;
  node->dim_w = 1;
  node->weights = Eigen::VectorXd::Ones(d);
  node->descriptor = "norm:" + std::to_string(d);
  return System(std::move(node));
}

System System::Product(const System& left, const System& right) {
  auto node = std::make_shared<Node>();
  node->kind = SystemKind::kProduct;
  node->left = left.node_;
  node->right = right.node_;
  node->dim_v = left.dim_v() + right.dim_v();
  node->dim_w = left.dim_w() + right.dim_w();
  node->weights.resize(node->dim_v);
  node->weights << left.coord_weights(), right.coord_weights();
  node->descriptor = "product(" + left.descriptor() + "," + right.descriptor() + ")";
  node->left_handle = std::make_unique<System>(left);
  node->right_handle = std::make_unique<System>(right);
  return System(std::move(node));
}

SystemKind System::kind() const { return node_->kind; }
int System::order() const { return node_->order; }
int System::dim_v() const { return node_->dim_v; }
int System::dim_w() const { return node_->dim_w; }
const Eigen::VectorXd& System::coord_weights() const { return node_->weights; }
std::string System::descriptor() const { return node_->descriptor; }

const System& System::left() const {
  if (node_->kind != SystemKind::kProduct) throw LayoutError("left() on a non-product system");
  return *node_->left_handle;
}

const System& System::right() const {
  if (node_->kind != SystemKind::kProduct) throw LayoutError("right() on a non-product system");
  return *node_->right_handle;
}

void check_layout(const System& sys, const Point& x) {
  if (x.size() != sys.dim_v()) {
    std::ostringstream msg;
    msg << "point has " << x.size() << " coordinates, " << sys.descriptor() << " expects "
        << sys.dim_v();
    throw LayoutError(msg.str());
  }
  if (!x.coords.allFinite()) throw DomainError("point has non-finite coordinates");
}

void check_layout(const System& sys, const SpecVector& w) {
  if (w.size() != sys.dim_w()) {
    std::ostringstream msg;
    msg << "spectral vector has length " << w.size() << ", " << sys.descriptor() << " expects "
        << sys.dim_w();
    throw LayoutError(msg.str());
  }
  if (!w.values.allFinite()) throw DomainError("spectral vector has non-finite entries");
}

double inner_v(const System& sys, const Point& x, const Point& y) {
  check_layout(sys, x);
  check_layout(sys, y);
  return (sys.coord_weights().array() * x.coords.array() * y.coords.array()).sum();
}

double norm_v(const System& sys, const Point& x) { return std::sqrt(inner_v(sys, x, x)); }

Point vector_point(std::span<const double> values) {
  Eigen::VectorXd v(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) v(i) = values[i];
  return Point(std::move(v));
}

Point symmetric_point(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DomainError("symmetric point needs a non-empty square matrix");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DomainError("matrix is not symmetric");
  }
  return pack_upper(m);
}

Point pack_upper(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  Eigen::VectorXd packed(n * (n + 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) packed(packed_index(n, i, j)) = m(i, j);
  }
  return Point(std::move(packed));
}

Point diagonal_point(std::span<const double> diag) {
  Eigen::VectorXd d(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) d(i) = diag[i];
  return symmetric_point(d.asDiagonal().toDenseMatrix());
}

Point pair_point(const Point& left, const Point& right) {
  Eigen::VectorXd v(left.size() + right.size());
  v << left.coords, right.coords;
  return Point(std::move(v));
}

Eigen::MatrixXd to_matrix(const System& sys, const Point& x) {
  if (sys.kind() != SystemKind::kSymmetric) throw LayoutError("to_matrix needs a sym:n system");
  check_layout(sys, x);
  const int n = sys.order();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = x.coords(packed_index(n, i, j));
  }
  return m;
}

std::pair<Point, Point> split(const System& sys, const Point& x) {
  if (sys.kind() != SystemKind::kProduct) throw LayoutError("split needs a product system");
  check_layout(sys, x);
  const int a = sys.left().dim_v();
  return {Point(x.coords.head(a)), Point(x.coords.tail(sys.dim_v() - a))};
}

std::pair<SpecVector, SpecVector> split(const System& sys, const SpecVector& w) {
  if (sys.kind() != SystemKind::kProduct) throw LayoutError("split needs a product system");
  check_layout(sys, w);
  const int a = sys.left().dim_w();
  return {SpecVector(w.values.head(a)), SpecVector(w.values.tail(sys.dim_w() - a))};
}

SpecVector concat(const SpecVector& a, const SpecVector& b) {
  Eigen::VectorXd v(a.size() + b.size());
  v << a.values, b.values;
  return SpecVector(std::move(v));
}

}  // namespace ftvn
