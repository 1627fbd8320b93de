#include "trimat/errors.hpp"

namespace trimat {

std::string Singular::format_message(const std::vector<std::size_t>& layers) {
    if (layers.empty()) return "matrix is singular: determinant is zero";
    std::string msg = "matrix is singular: zero determinant in layer";
    if (layers.size() > 1) msg += 's';
    for (std::size_t i = 0; i < layers.size(); ++i) {
        msg += (i == 0 ? " " : ", ") + std::to_string(layers[i]);
    }
    return msg;
}

}  // namespace trimat
