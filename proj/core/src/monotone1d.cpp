#include "monobox/monotone1d.hpp"

#include <algorithm>
#include <stdexcept>

namespace monobox {
namespace {

void check_distinct(std::span<const double> seq) {
  std::vector<double> sorted(seq.begin(), seq.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("sequence has tied values");
  }
}

// lengths[i] = longest strictly increasing run of seq ending at i.
// Patience sorting: tops[p] is the smallest possible tail value of an
// increasing run of length p+1 seen so far.
std::vector<int> patience_end_lengths(const std::vector<double>& seq) {
  std::vector<int> lengths(seq.size(), 0);
  std::vector<double> tops;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    auto it = std::lower_bound(tops.begin(), tops.end(), seq[i]);
    std::size_t pile = static_cast<std::size_t>(it - tops.begin());
    if (it == tops.end()) {
      tops.push_back(seq[i]);
    } else {
      *it = seq[i];
    }
    lengths[i] = static_cast<int>(pile) + 1;
  }
  return lengths;
}

// start_lengths[i] = longest run starting at i, increasing when sign=+1.
// Obtained by running the end-lengths pass on the reversed (and for the
// increasing case negated) sequence.
std::vector<int> start_lengths(std::span<const double> seq, int sign) {
  std::size_t n = seq.size();
  std::vector<double> rev(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = seq[n - 1 - i];
    rev[i] = sign > 0 ? -v : v;
  }
  std::vector<int> end_len = patience_end_lengths(rev);
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = end_len[n - 1 - i];
  }
  return out;
}

// Lexicographically-least run of exactly `target` indices with the given
// sign.  At each step the smallest usable index admits a completion because
// starts[i] counts only continuations inside i's suffix.
std::vector<int> lex_least_run(std::span<const double> seq, const std::vector<int>& starts,
                               int target, int sign) {
  std::vector<int> indices;
  indices.reserve(static_cast<std::size_t>(target));
  int last_idx = -1;
  double last_val = 0.0;
  for (int remaining = target; remaining >= 1; --remaining) {
    for (int i = last_idx + 1; i < static_cast<int>(seq.size()); ++i) {
      bool value_ok = last_idx < 0 || (sign > 0 ? seq[i] > last_val : seq[i] < last_val);
      if (value_ok && starts[static_cast<std::size_t>(i)] >= remaining) {
        indices.push_back(i);
        last_idx = i;
        last_val = seq[i];
        break;
      }
    }
  }
  return indices;
}

} // namespace

bool verify_run(std::span<const double> seq, const RunCertificate& cert) {
  check_distinct(seq);
  if (cert.sign != 1 && cert.sign != -1) {
    throw std::invalid_argument("run sign must be +1 or -1");
  }
  int prev = -1;
  for (int idx : cert.indices) {
    if (idx < 0 || idx >= static_cast<int>(seq.size())) {
      throw std::out_of_range("run index outside sequence");
    }
    if (idx <= prev) {
      throw std::invalid_argument("run indices must be strictly ascending");
    }
    prev = idx;
  }
  for (std::size_t i = 1; i < cert.indices.size(); ++i) {
    double a = seq[static_cast<std::size_t>(cert.indices[i - 1])];
    double b = seq[static_cast<std::size_t>(cert.indices[i])];
    if (cert.sign > 0 ? !(a < b) : !(a > b)) {
      return false;
    }
  }
  return true;
}

LongestRuns longest_monotone(std::span<const double> seq) {
  check_distinct(seq);
  LongestRuns runs;
  runs.increasing.sign = 1;
  runs.decreasing.sign = -1;
  if (seq.empty()) {
    return runs;
  }
  std::vector<int> inc_starts = start_lengths(seq, 1);
  std::vector<int> dec_starts = start_lengths(seq, -1);
  int inc_len = *std::max_element(inc_starts.begin(), inc_starts.end());
  int dec_len = *std::max_element(dec_starts.begin(), dec_starts.end());
  runs.increasing.indices = lex_least_run(seq, inc_starts, inc_len, 1);
  runs.decreasing.indices = lex_least_run(seq, dec_starts, dec_len, -1);
  return runs;
}

std::optional<RunCertificate> monotone_of_length(std::span<const double> seq, int n) {
  if (n < 1) {
    throw std::invalid_argument("requested run length must be positive");
  }
  LongestRuns runs = longest_monotone(seq);
  for (const RunCertificate* cand : {&runs.increasing, &runs.decreasing}) {
    if (static_cast<int>(cand->indices.size()) >= n) {
      RunCertificate out;
      out.sign = cand->sign;
      out.indices.assign(cand->indices.begin(), cand->indices.begin() + n);
      return out;
    }
  }
  return std::nullopt;
}

} // namespace monobox
