#include "indep/render.hpp"

#include <iomanip>
#include <map>
#include <sstream>

#include "json.hpp"

namespace indep {

namespace {

using Json = nlohmann::ordered_json;

template <class T>
std::string join(const std::vector<T>& items, const std::string& sep) {
  std::ostringstream out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out << sep;
    out << items[i];
  }
  return out.str();
}

std::vector<std::string> atom_strings(const CensusReport& report, const std::vector<BigInt>& atoms) {
  std::vector<std::string> out;
  for (const auto& a : atoms) {
    out.push_back(report.uniform ? to_string(a) : to_string(Rational(a, report.weight_total)));
  }
  return out;
}

Json atoms_json(const CensusReport& report, const std::vector<BigInt>& atoms) {
  Json arr = Json::array();
  for (const auto& a : atoms) {
    if (report.uniform) {
      arr.push_back(static_cast<std::int64_t>(a));
    } else {
      arr.push_back(to_string(Rational(a, report.weight_total)));
    }
  }
  return arr;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "table") return Format::table;
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  throw ValidationError("unknown format '" + name + "'");
}

std::string format_event(const Event& e) { return "{" + join(e.outcomes(), ",") + "}"; }

std::string render_json(const CensusReport& report, bool with_timing) {
  Json j;
  j["mode"] = to_string(report.mode);
  j["n"] = report.n;
  j["k"] = report.k;
  j["space"] = report.uniform ? "uniform" : "weighted";
  j["engine"] = report.engine;
  j["total"] = to_string(report.total);

  Json sigs = Json::array();
  for (std::size_t i = 0; i < report.signatures.size(); ++i) {
    const auto& s = report.signatures[i];
    Json entry;
    entry["label"] = "N" + std::to_string(i + 1);
    entry["k"] = s.k;
    entry["signature"] = atoms_json(report, s.atoms);
    entry["count"] = to_string(s.count);
    sigs.push_back(std::move(entry));
  }
  j["signatures"] = std::move(sigs);

  Json classes = Json::array();
  for (const auto& c : report.classes) {
    Json entry;
    entry["k"] = c.k;
    entry["sizes"] = c.sizes;
    entry["intersection"] = c.intersection;
    entry["signature"] = c.signature;
    entry["label"] = report.label_of(c);
    entry["count"] = to_string(c.count);
    classes.push_back(std::move(entry));
  }
  j["classes"] = std::move(classes);

  if (!report.witnesses.empty()) {
    Json witnesses = Json::array();
    for (const auto& tuple : report.witnesses) {
      Json t = Json::array();
      for (const auto& e : tuple) t.push_back(e.outcomes());
      witnesses.push_back(std::move(t));
    }
    j["witnesses"] = std::move(witnesses);
  }
  if (report.distinct_events) j["distinct_events"] = *report.distinct_events;
  if (report.cross_check_mismatches) j["cross_check_mismatches"] = *report.cross_check_mismatches;
  if (with_timing) {
    j["meta"] = {{"workers", report.workers}, {"elapsed_ms", report.elapsed_ms}};
  }
  return j.dump(2) + "\n";
}

std::string render_csv(const CensusReport& report) {
  std::ostringstream out;
  out << "k,sizes,intersection,signature,count\n";
  if (report.uniform) {
    for (const auto& c : report.classes) {
      out << c.k << ',' << join(c.sizes, " ") << ',' << c.intersection << ','
          << join(c.signature, " ") << ',' << c.count << '\n';
    }
  } else {
    for (const auto& s : report.signatures) {
      out << s.k << ",,," << join(atom_strings(report, s.atoms), " ") << ',' << s.count << '\n';
    }
  }
  return out.str();
}

std::string render_text(const CensusReport& report, bool with_timing) {
  std::ostringstream out;
  out << to_string(report.mode) << " census: n=" << report.n;
  if (report.mode == CensusMode::tuples) out << " k=" << report.k;
  out << ", " << (report.uniform ? "uniform" : "weighted") << " space, " << report.engine
      << " engine\n";
  out << "total: " << report.total << "\n";

  if (!report.signatures.empty()) {
    out << "\npattern  k  signature                  count\n";
    for (std::size_t i = 0; i < report.signatures.size(); ++i) {
      const auto& s = report.signatures[i];
      out << pad("N" + std::to_string(i + 1), 9) << pad(std::to_string(s.k), 3)
          << pad("[" + join(atom_strings(report, s.atoms), ",") + "]", 27) << s.count << "\n";
    }
  }
  if (!report.classes.empty()) {
    out << "\nk  sizes          d    pattern  count\n";
    for (const auto& c : report.classes) {
      out << pad(std::to_string(c.k), 3) << pad("(" + join(c.sizes, ",") + ")", 15)
          << pad(std::to_string(c.intersection), 5) << pad(report.label_of(c), 9) << c.count
          << "\n";
    }
  }
  if (!report.witnesses.empty()) {
    out << "\nwitnesses\n";
    for (const auto& tuple : report.witnesses) {
      std::vector<std::string> parts;
      for (const auto& e : tuple) parts.push_back(format_event(e));
      out << "  " << join(parts, " ") << "\n";
    }
  }
  if (report.distinct_events) out << "distinct events: " << *report.distinct_events << "\n";
  if (report.cross_check_mismatches) {
    out << "cross-check mismatches: " << *report.cross_check_mismatches << "\n";
  }
  if (with_timing) {
    out << "workers: " << report.workers << ", elapsed: " << std::fixed << std::setprecision(1)
        << report.elapsed_ms << " ms\n";
  }
  return out.str();
}

std::string render(const CensusReport& report, Format format, bool with_timing) {
  switch (format) {
    case Format::json: return render_json(report, with_timing);
    case Format::csv: return render_csv(report);
    case Format::table: break;
  }
  return render_text(report, with_timing);
}

std::string render_pair_table(std::int64_t n) {
  const CensusReport report = analytic_report(n, CensusMode::pairs);
  std::ostringstream out;
  out << "Independent pairs of nontrivial events, uniform space of " << n << " outcomes\n\n";
  if (report.classes.empty()) {
    out << "no independent pairs\n\nK1 = 0\n";
    return out.str();
  }

  std::map<std::int64_t, std::vector<const ClassCount*>> rows;
  for (const auto& c : report.classes) rows[c.intersection].push_back(&c);

  struct Row {
    std::string d_ab, factors, labels, counts;
  };
  std::vector<Row> lines;
  for (auto& [d, classes] : rows) {
    std::stable_sort(classes.begin(), classes.end(), [&](const ClassCount* x, const ClassCount* y) {
      const auto lx = report.label_of(*x);
      const auto ly = report.label_of(*y);
      if (lx.size() != ly.size()) return lx.size() < ly.size();
      return lx < ly;
    });
    Row row;
    row.d_ab = std::to_string(d) + ";" + std::to_string(d * n);
    std::vector<std::string> factors, labels, counts;
    for (const auto* c : classes) {
      factors.push_back(std::to_string(c->sizes[0]) + "*" + std::to_string(c->sizes[1]));
      labels.push_back(report.label_of(*c));
      counts.push_back(to_string(c->count));
    }
    row.factors = join(factors, ", ");
    row.labels = join(labels, " ; ");
    row.counts = join(counts, ", ");
    lines.push_back(std::move(row));
  }

  std::size_t w1 = 4, w2 = 5, w3 = 9;
  for (const auto& r : lines) {
    w1 = std::max(w1, r.d_ab.size());
    w2 = std::max(w2, r.factors.size());
    w3 = std::max(w3, r.labels.size());
  }
  out << pad("d;ab", w1 + 3) << pad("a*b", w2 + 3) << pad("partition", w3 + 3) << "count\n";
  for (const auto& r : lines) {
    out << pad(r.d_ab, w1 + 3) << pad(r.factors, w2 + 3) << pad(r.labels, w3 + 3) << r.counts
        << "\n";
  }

  out << "\npartitions\n";
  for (std::size_t i = 0; i < report.signatures.size(); ++i) {
    const auto& s = report.signatures[i];
    std::size_t members = 0;
    BigInt per_class = 0;
    for (const auto& c : report.classes) {
      if (report.label_of(c) == "N" + std::to_string(i + 1)) {
        ++members;
        per_class = c.count;
      }
    }
    out << "  " << pad("N" + std::to_string(i + 1), 5)
        << pad("[" + join(atom_strings(report, s.atoms), ",") + "]", 16) << members
        << (members == 1 ? " class   x " : " classes x ") << per_class << "\n";
  }
  out << "\nK1 = " << report.total << "\n";
  return out.str();
}

std::string render_verification(const VerificationReport& report, Format format) {
  if (format == Format::json) {
    Json j;
    j["n"] = report.n;
    j["k_max"] = report.k_max;
    Json lines = Json::array();
    for (const auto& l : report.lines) {
      lines.push_back({{"k", l.k},
                       {"brute", to_string(l.brute_total)},
                       {"analytic", to_string(l.analytic_total)},
                       {"classes", l.classes},
                       {"match", l.match}});
    }
    j["lines"] = std::move(lines);
    j["match"] = report.match;
    if (!report.match) j["first_mismatch"] = report.first_mismatch;
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "verify n=" << report.n << "\n";
  for (const auto& l : report.lines) {
    out << "k=" << l.k << "  brute=" << l.brute_total << "  analytic=" << l.analytic_total
        << "  classes=" << l.classes << "  " << (l.match ? "match" : "MISMATCH") << "\n";
  }
  out << "result: " << (report.match ? "match" : "MISMATCH (" + report.first_mismatch + ")")
      << "\n";
  return out.str();
}

}  // namespace indep
