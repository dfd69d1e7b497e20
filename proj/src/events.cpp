#include <algorithm>

#include "padicsym/densities.hpp"

namespace padicsym {

namespace {

void partitions_rec(int remaining, int max_part, int max_len, std::vector<int>& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  if (static_cast<int>(cur.size()) == max_len) return;
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions_rec(remaining - part, part, max_len, cur, out);
    cur.pop_back();
  }
}

void eldivs_rec(int n, int lo, int cap, std::vector<int>& cur, std::vector<EldivSequence>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.emplace_back(cur);
    return;
  }
  for (int k = lo; k <= cap; ++k) {
    cur.push_back(k);
    eldivs_rec(n, k, cap, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(int k, int max_len, int max_part) {
  if (k < 0) throw InvalidArgument("partitions_of needs k >= 0");
  std::vector<Partition> out;
  std::vector<int> cur;
  partitions_rec(k, max_part, max_len, cur, out);
  return out;
}

std::vector<EldivSequence> eldivs_up_to(int n, int cap) {
  if (n < 0 || cap < 0) throw InvalidArgument("eldivs_up_to needs n, cap >= 0");
  std::vector<EldivSequence> out;
  std::vector<int> cur;
  eldivs_rec(n, 0, cap, cur, out);
  return out;
}

Interval det_dist(int n, int k, Int p, int cap) {
  if (n < 1 || k < 0) throw InvalidArgument("det_dist needs n >= 1, k >= 0");
  if (cap < k) throw InvalidArgument("det_dist needs cap >= k");
  BigRational total = 0;
  for (const auto& lambda : partitions_of(k, n, cap)) total += sym_eldiv_prob(lambda.as_eldivs(n), p);
  return Interval::point(total);
}

Interval event_prob_capped(const ClassPredicate& pred, int n, Int p, int cap) {
  if (n < 1 || cap < 0) throw InvalidArgument("event_prob_capped needs n >= 1, cap >= 0");
  BigRational hit = 0, seen = 0;
  for (const auto& e : eldivs_up_to(n, cap))
    for (const auto& cls : classes_over(e)) {
      BigRational w = sym_class_prob(cls, p);
      seen += w;
      if (pred(cls)) hit += w;
    }
  return {hit, hit + (1 - seen)};
}

}  // namespace padicsym
