// Copyright 2026 The lindlearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <set>

#include <gtest/gtest.h>

#include "lindlearn/operators.hpp"

namespace lindlearn {
namespace {

TEST(Basis, Sizes) {
  EXPECT_EQ(enumerate_basis(2).size(), 4u);
  EXPECT_EQ(enumerate_basis(4).size(), 16u);
  EXPECT_THROW(enumerate_basis(3), std::invalid_argument);
}

TEST(Library, TwoLevelHasTenOperators) {
  const auto lib = build_library(2, 2);
  ASSERT_EQ(lib.size(), 10u);
  std::set<std::string> labels;
  for (const auto& op : lib) labels.insert(op.label());
  EXPECT_EQ(labels.size(), 10u);
  EXPECT_TRUE(labels.count("se+sg"));  // identity
  EXPECT_TRUE(labels.count("sp+sm"));  // sigma_x
}

TEST(Library, FourLevelCounts) {
  const LibraryBuild b = build_library_detailed(4, 2);
  EXPECT_EQ(b.candidates, 16u + 120u);
  // Unit-coefficient sums of distinct matrix units are never positively
  // proportional, so nothing is removed.
  EXPECT_EQ(b.operators.size(), 136u);
  EXPECT_TRUE(b.dedup_log.empty());
}

TEST(Library, SortedDeterministicAndComplexityOne) {
  const auto a = build_library(4, 2);
  const auto b = build_library(4, 2);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].label(), b[i].label());
  for (std::size_t i = 1; i < a.size(); ++i) EXPECT_LT(a[i - 1].label(), a[i].label());
  EXPECT_EQ(build_library(2, 1).size(), 4u);
  EXPECT_THROW(build_library(2, 0), std::invalid_argument);
}

TEST(Library, HamiltonianSublibrary) {
  EXPECT_EQ(hamiltonian_sublibrary(build_library(2, 2)).size(), 4u);
  // 4 projectors, 6 projector pairs, 6 symmetric off-diagonal pairs.
  EXPECT_EQ(hamiltonian_sublibrary(build_library(4, 2)).size(), 16u);
}

TEST(ProcessOperator, LabelRoundTripAndAdjoint) {
  const auto op = ProcessOperator::from_label(4, "s_ga+s_ae");
  EXPECT_EQ(ProcessOperator::from_label(4, op.label()).label(), op.label());
  const auto adj = op.adjoint();
  EXPECT_TRUE(approx_equal(adj.matrix(), op.matrix().adjoint(), 0.0));
  EXPECT_EQ(adj.adjoint().label(), op.label());
  EXPECT_TRUE(ProcessOperator::from_label(2, "sp+sm").hermitian());
  EXPECT_FALSE(ProcessOperator::from_label(2, "sm").hermitian());
  EXPECT_THROW(ProcessOperator::from_label(2, "sm+sm"), std::invalid_argument);
  EXPECT_THROW(ProcessOperator::from_label(2, "sx"), std::invalid_argument);
}

TEST(Classify, TwoLevel) {
  EXPECT_EQ(classify_optical(ProcessOperator::from_label(2, "sm"), 2), OpticalClass::kMonitoredEmission);
  EXPECT_EQ(classify_optical(ProcessOperator::from_label(2, "sp"), 2), OpticalClass::kExcitation);
  EXPECT_EQ(classify_optical(ProcessOperator::from_label(2, "se"), 2), OpticalClass::kDark);
  EXPECT_EQ(classify_optical(ProcessOperator::from_label(2, "se+sm"), 2), OpticalClass::kDark);
}

TEST(Classify, FourLevel) {
  for (const char* l : {"s_be", "s_ag", "s_ga+s_ae", "s_gb+s_be"}) {
    const auto op = ProcessOperator::from_label(4, l);
    const auto c = classify_optical(op, 4);
    EXPECT_NE(c, OpticalClass::kDark) << l;
  }
  EXPECT_EQ(classify_optical(ProcessOperator::from_label(4, "s_ga+s_ae"), 4), OpticalClass::kMonitoredEmission);
  EXPECT_EQ(classify_optical(ProcessOperator::from_label(4, "s_ag+s_ea"), 4), OpticalClass::kExcitation);
  EXPECT_EQ(classify_optical(ProcessOperator::from_label(4, "s_ab"), 4), OpticalClass::kDark);
  EXPECT_EQ(classify_optical(ProcessOperator::from_label(4, "s_ge"), 4), OpticalClass::kDark);
  EXPECT_EQ(classify_optical(ProcessOperator::from_label(4, "s_ga+s_ag"), 4), OpticalClass::kDark);
}

TEST(Library, FindOperator) {
  const auto lib = build_library(2, 2);
  ASSERT_TRUE(find_operator(lib, "sm").has_value());
  EXPECT_EQ(lib[*find_operator(lib, "sm")].label(), "sm");
  EXPECT_FALSE(find_operator(lib, "nope").has_value());
}

}  // namespace
}  // namespace lindlearn
