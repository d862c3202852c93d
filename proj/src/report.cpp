#include "indep/report.hpp"

#include <algorithm>
#include <chrono>
#include <map>

namespace indep {

std::string to_string(CensusMode mode) {
  switch (mode) {
    case CensusMode::pairs: return "pairs";
    case CensusMode::tuples: return "tuples";
    case CensusMode::grand: return "grand";
  }
  return "unknown";
}

std::string CensusReport::label_of(int k, const std::vector<BigInt>& atoms) const {
  for (std::size_t i = 0; i < signatures.size(); ++i) {
    if (signatures[i].k == k && signatures[i].atoms == atoms) return "N" + std::to_string(i + 1);
  }
  return {};
}

std::string CensusReport::label_of(const ClassCount& cls) const {
  std::vector<BigInt> atoms(cls.signature.begin(), cls.signature.end());
  return label_of(cls.k, atoms);
}

void canonicalize(CensusReport& report) {
  std::stable_sort(report.signatures.begin(), report.signatures.end(),
                   [](const SignatureCount& a, const SignatureCount& b) {
                     if (a.k != b.k) return a.k < b.k;
                     return label_before(a.atoms, b.atoms);
                   });
  std::stable_sort(report.classes.begin(), report.classes.end(),
                   [](const ClassCount& a, const ClassCount& b) {
                     if (a.k != b.k) return a.k < b.k;
                     if (a.intersection != b.intersection) return a.intersection < b.intersection;
                     return a.sizes < b.sizes;
                   });
}

CensusReport analytic_report(std::int64_t n, CensusMode mode, int k) {
  const auto start = std::chrono::steady_clock::now();
  CensusReport report;
  report.n = n;
  report.mode = mode;
  report.engine = "analytic";
  report.uniform = true;
  report.weight_total = n;

  std::vector<int> ks;
  if (mode == CensusMode::pairs) {
    ks = {2};
  } else if (mode == CensusMode::tuples) {
    ks = {k};
  } else {
    for (int j = 2; n >= 2 && j <= prop1_max_k(n); ++j) ks.push_back(j);
    if (ks.empty()) ks.push_back(2);
  }
  report.k = ks.back();

  std::map<std::pair<int, Signature>, BigInt> by_signature;
  for (int j : ks) {
    for (const auto& cls : tuple_classes(n, j)) {
      ClassCount entry{cls.k, cls.sizes, cls.intersection, pattern_signature(cls), cls.count};
      by_signature[{cls.k, entry.signature}] += cls.count;
      report.total += cls.count;
      report.classes.push_back(std::move(entry));
    }
  }
  for (const auto& [key, count] : by_signature) {
    report.signatures.push_back(
        SignatureCount{key.first, std::vector<BigInt>(key.second.begin(), key.second.end()), count});
  }
  canonicalize(report);
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace indep
