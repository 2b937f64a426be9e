#pragma once

// Reference example and counterexample instances, embedded so that replay
// needs no input files. Entries are given as decimal strings so the exact
// rational value of each entry is available alongside the double.

#include <string>
#include <vector>

#include "pdineq/inequalities.hpp"

namespace pdineq::reference {

struct ExactPair {
  RationalMatrix c;
  RationalMatrix d;
};

using StringRows = std::vector<std::vector<std::string>>;

// 4x4 instance, partition (2,2), D not block diagonal. Its diagonal blocks
// yield a weak-log failure at prefix 2.
inline const StringRows kGeneralDC = {
    {"14", "8", "9", "8"}, {"8", "12", "7", "7"}, {"9", "7", "10", "8"}, {"8", "7", "8", "8"}};
inline const StringRows kGeneralDD = {
    {"11", "12", "6", "11"}, {"12", "16", "7", "12"}, {"6", "7", "5", "6"}, {"11", "12", "6", "14"}};

// 2x2 instance with D = I used for negative exponents.
inline const StringRows kNegPowerC = {{"3", "2"}, {"2", "3"}};

// 2x2 Matic instance with D not diagonal.
inline const StringRows kMaticGeneralC = {{"12", "7"}, {"7", "10"}};
inline const StringRows kMaticGeneralD = {{"16", "7"}, {"7", "5"}};

// 4x4 instance, partition (2,2), block diagonal D with widely different
// block scales; violates the inverse-square-sum inequality.
inline const StringRows kInvSquareC = {{"16.25", "21", "10", "12.5"},
                                       {"21", "39.75", "20.75", "28.5"},
                                       {"10", "20.75", "22.5", "27.75"},
                                       {"12.5", "28.5", "27.75", "39.25"}};
inline const StringRows kInvSquareD = {
    {"14.7", "15", "0", "0"}, {"15", "15.8", "0", "0"}, {"0", "0", "0.25", "0.4"}, {"0", "0", "0.4", "0.8"}};

Partition two_by_two();
Partition one_by_one();

/// C, full D, partition (2,2).
Instance general_d_instance();
/// Same C with D replaced by the direct sum of the diagonal blocks of D.
Instance block_d_instance();
/// C = [[3,2],[2,3]], D = I, exponent p.
Instance neg_power_instance(double p);
Instance matic_general_instance();
/// Block-diagonal counterexample for the inverse-square-sum family, exponent p.
Instance inv_square_instance(double p = 2.0);

}  // namespace pdineq::reference
