#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace orl {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Error raised for contract violations anywhere in the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define ORL_REQUIRE(cond, msg)                  \
    do {                                        \
        if (!(cond)) throw ::orl::Error(msg);   \
    } while (0)

}  // namespace orl
