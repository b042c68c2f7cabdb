#pragma once

#include "brpic/hopf.hpp"

#include <functional>
#include <optional>
#include <string>

namespace brpic::detail {

// Runs check(i) for i < n and reports the failure with the smallest index.
CheckReport first_failure(std::size_t n, Exec exec, const std::function<std::optional<std::string>(std::size_t)>& check);

std::string describe_sparse(const Sparse& x, std::size_t limit = 4);

// Host bookkeeping for B = H (x) H built by build_tensor_hopf.
std::optional<std::size_t> project_first(const HopfAlg& H, const HopfAlg& B, std::size_t b);   // eps on slot 2
std::optional<std::size_t> project_second(const HopfAlg& H, const HopfAlg& B, std::size_t b);  // eps on slot 1

inline int popcount(std::uint32_t m) { return __builtin_popcount(m); }

}  // namespace brpic::detail
