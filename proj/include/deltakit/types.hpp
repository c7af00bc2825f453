#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace deltakit {

using Index = Eigen::Index;

template <typename Scalar> using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Scalar> using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXd = Matrix<double>;
using VectorXd = Vector<double>;
using CountMatrix = Matrix<std::int64_t>;

using Labels = std::vector<std::string>;

/// Raised for violated preconditions and malformed inputs throughout the library.
struct Error : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

enum class ZMode
{
  Centred,
  Uncentred
};

std::string to_string(ZMode mode);
ZMode parse_zmode(std::string const &text);

} // namespace deltakit

namespace deltakit {

using WarningSink = void (*)(std::string const &);

/// Library warnings (e.g. dropped zero-variance tokens) go here; default is std::clog.
void set_warning_sink(WarningSink sink);
void warn(std::string const &message);

} // namespace deltakit
