#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace rouser {

// Adam moment buffers. Weights and thresholds are separate parameter groups
// so a zero threshold learning rate freezes thresholds exactly.
struct AdamState {
  struct Group {
    Eigen::MatrixXd m_weights;
    Eigen::MatrixXd v_weights;
    Eigen::VectorXd m_thresholds;
    Eigen::VectorXd v_thresholds;
  };

  std::vector<Group> layers;
  std::uint64_t step_count = 0;

  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEpsilon = 1e-8;
};

}  // namespace rouser
