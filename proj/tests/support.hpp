#pragma once

#include "oracle.hpp"
#include "surgery/dataset.hpp"

#include <doctest.h>

#include <filesystem>
#include <string>

namespace test_support {

inline std::filesystem::path scripts_dir() { return std::filesystem::path(SURGERY_SOURCE_DIR) / "scripts"; }

inline const surgery::Dataset& dataset(const std::string& file) {
  static std::map<std::string, surgery::Dataset> cache;
  auto it = cache.find(file);
  if (it == cache.end()) it = cache.emplace(file, surgery::load_dataset(scripts_dir() / "data" / file)).first;
  return it->second;
}

inline oracle::Big big(const surgery::Integer& x) { return x.raw(); }
inline oracle::Q rat(const surgery::Rational& x) { return oracle::Q(x.num().raw(), x.den().raw()); }

inline oracle::Mat to_oracle(const surgery::IntMatrix& m) {
  oracle::Mat out(static_cast<std::size_t>(m.rows()), std::vector<oracle::Q>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = oracle::Q(m(i, j).raw());
  return out;
}

inline std::vector<int> negated(const std::vector<int>& v) {
  std::vector<int> out;
  for (int x : v) out.push_back(-x);
  return out;
}

}  // namespace test_support
