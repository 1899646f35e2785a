#pragma once

#include <span>
#include <vector>

namespace starhd {

/// Area under the ROC curve by the Mann-Whitney rank statistic with average
/// ranks for ties: AUC = (R_pos - n_pos (n_pos + 1) / 2) / (n_pos n_neg),
/// where R_pos is the rank sum of the positive scores. `is_positive[i]`
/// flags the label of `scores[i]`. Throws DomainError unless both classes
/// are present.
double auc(std::span<const double> scores, const std::vector<bool>& is_positive);

}  // namespace starhd
