#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "sharptf/metrics.hpp"
#include "sharptf/image.hpp"
#include "sharptf/parallel.hpp"

namespace sharptf {

namespace {

std::string format_number(double v, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

MetricRow score(const Tfr& prediction, const Tfr& ideal) {
  MetricRow row;
  row.pc = pearson(prediction, ideal);
  row.l1 = l1_diff(image_to_tfr(normalize_to_image(prediction)),
                   image_to_tfr(normalize_to_image(ideal)));
  row.renyi3 = renyi3(prediction);
  return row;
}

std::string average_label(std::size_t population) {
  return "Avg(" + std::to_string(population) + ")";
}

MetricsReport build_report(const std::vector<Prediction>& predictions,
                           const std::map<std::string, Tfr>& ideals, std::size_t threads) {
  std::set<std::string> missing;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& p : predictions) {
    if (!ideals.contains(p.signal)) missing.insert(p.signal);
    if (!seen.emplace(p.signal, p.method).second) {
      throw ValidationError("duplicate prediction for signal '" + p.signal + "', method '" +
                            p.method + "'");
    }
  }
  if (!missing.empty()) {
    std::string ids;
    for (const auto& id : missing) ids += (ids.empty() ? "" : ", ") + id;
    throw ValidationError("no ideal TF for signal ids: " + ids);
  }

  std::vector<std::size_t> order(predictions.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& pa = predictions[a];
    const auto& pb = predictions[b];
    return std::tie(pa.signal, pa.method) < std::tie(pb.signal, pb.method);
  });

  MetricsReport report;
  report.rows.resize(order.size());
  parallel_for(
      order.size(),
      [&](std::size_t i) {
        const auto& p = predictions[order[i]];
        try {
          report.rows[i] = score(p.values, ideals.at(p.signal));
        } catch (const std::exception& e) {
          throw ValidationError(p.signal + " (" + p.method + "): " + e.what());
        }
        report.rows[i].signal = p.signal;
        report.rows[i].method = p.method;
      },
      threads);

  std::map<std::string, std::vector<const MetricRow*>> by_method;
  std::set<std::string> signals;
  for (const auto& row : report.rows) {
    by_method[row.method].push_back(&row);
    signals.insert(row.signal);
  }
  for (const auto& [method, rows] : by_method) {
    MetricRow avg{average_label(signals.size()), method, 0.0, 0.0, 0.0};
    for (const auto* r : rows) {
      avg.pc += r->pc;
      avg.l1 += r->l1;
      avg.renyi3 += r->renyi3;
    }
    const double n = static_cast<double>(rows.size());
    avg.pc /= n;
    avg.l1 /= n;
    avg.renyi3 /= n;
    report.averages.push_back(avg);
  }
  return report;
}

std::string to_csv(const MetricsReport& report) {
  std::ostringstream out;
  out << "signal,method,pc,l1,renyi3\n";
  auto emit = [&](const MetricRow& r) {
    out << r.signal << ',' << r.method << ',' << format_number(r.pc, "%.10g") << ','
        << format_number(r.l1, "%.10g") << ',' << format_number(r.renyi3, "%.10g") << '\n';
  };
  for (const auto& r : report.rows) emit(r);
  for (const auto& r : report.averages) emit(r);
  return out.str();
}

std::string to_table(const MetricsReport& report) {
  std::vector<std::string> methods;
  for (const auto& a : report.averages) methods.push_back(a.method);
  std::map<std::string, std::map<std::string, const MetricRow*>> grid;
  std::vector<std::string> signals;
  for (const auto& r : report.rows) {
    if (!grid.contains(r.signal)) signals.push_back(r.signal);
    grid[r.signal][r.method] = &r;
  }

  constexpr int kLabel = 12;
  constexpr int kCell = 9;
  auto pad = [](std::string s, int width) {
    if (static_cast<int>(s.size()) < width) s.insert(0, static_cast<std::size_t>(width) - s.size(), ' ');
    return s;
  };
  auto cells = [&](const MetricRow* r) {
    if (r == nullptr) return pad("-", kCell) + pad("-", kCell) + pad("-", kCell);
    return pad(format_number(r->pc, "%.2f"), kCell) + pad(format_number(r->l1, "%.0f"), kCell) +
           pad(format_number(r->renyi3, "%.2f"), kCell);
  };

  std::ostringstream out;
  out << pad("", kLabel);
  for (const auto& m : methods) out << " |" << pad(m, 3 * kCell);
  out << '\n' << pad("", kLabel);
  for (std::size_t i = 0; i < methods.size(); ++i) {
    out << " |" << pad("pc", kCell) << pad("l1", kCell) << pad("R", kCell);
  }
  out << '\n';
  for (const auto& s : signals) {
    out << pad(s, kLabel);
    for (const auto& m : methods) {
      auto it = grid[s].find(m);
      out << " |" << cells(it == grid[s].end() ? nullptr : it->second);
    }
    out << '\n';
  }
  if (!report.averages.empty()) {
    out << pad(report.averages.front().signal, kLabel);
    for (const auto& a : report.averages) out << " |" << cells(&a);
    out << '\n';
  }
  return out.str();
}

}  // namespace sharptf
