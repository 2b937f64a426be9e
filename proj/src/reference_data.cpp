#include "pdineq/reference_data.hpp"

namespace pdineq::reference {

namespace {

Instance from_strings(const StringRows& c, const StringRows& d, Partition part, double p = 1.0) {
  Instance inst;
  inst.partition = std::move(part);
  inst.c_exact = RationalMatrix::from_strings(c);
  inst.d_exact = RationalMatrix::from_strings(d);
  inst.c = PDMatrix(inst.c_exact->to_matrix());
  inst.d = PDMatrix(inst.d_exact->to_matrix());
  inst.p = p;
  return inst;
}

StringRows block_part(const StringRows& d, const Partition& part) {
  StringRows out = d;
  std::vector<std::size_t> block_of;
  for (std::size_t b = 0; b < part.blocks(); ++b) block_of.insert(block_of.end(), part.sizes()[b], b);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < out.size(); ++j)
      if (block_of[i] != block_of[j]) out[i][j] = "0";
  return out;
}

}  // namespace

Partition two_by_two() {
  const std::size_t s[] = {2, 2};
  return validate_partition(s, 4);
}

Partition one_by_one() {
  const std::size_t s[] = {1, 1};
  return validate_partition(s, 2);
}

Instance general_d_instance() { return from_strings(kGeneralDC, kGeneralDD, two_by_two()); }

Instance block_d_instance() {
  const auto part = two_by_two();
  return from_strings(kGeneralDC, block_part(kGeneralDD, part), part);
}

Instance neg_power_instance(double p) {
  return from_strings(kNegPowerC, {{"1", "0"}, {"0", "1"}}, one_by_one(), p);
}

Instance matic_general_instance() { return from_strings(kMaticGeneralC, kMaticGeneralD, one_by_one()); }

Instance inv_square_instance(double p) { return from_strings(kInvSquareC, kInvSquareD, two_by_two(), p); }

}  // namespace pdineq::reference
