#include "ppn/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "ppn/error.hpp"

namespace ppn {

namespace {

// JSON has no infinities; the chi-square diagnostic can be +inf.
Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw DataError("report: bad number '" + s + "'");
  }
  return j.get<double>();
}

Json numbers(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

std::vector<double> numbers_from(const Json& j) {
  std::vector<double> v;
  v.reserve(j.size());
  for (const auto& x : j) v.push_back(number_from(x));
  return v;
}

std::string mode_name(StudyMode m) { return m == StudyMode::chain ? "chain" : "full"; }

StudyMode mode_from(const std::string& s) {
  if (s == "full") return StudyMode::full;
  if (s == "chain") return StudyMode::chain;
  throw DataError("report: unknown mode '" + s + "'");
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

void write_cell_csv(const std::filesystem::path& path, const std::vector<std::pair<std::string, const std::vector<double>*>>& sources,
                    const std::string& observed_label, const double* observed) {
  std::ostringstream s;
  s.precision(17);
  s << "source,value\n";
  for (const auto& [label, values] : sources)
    for (double v : *values) s << label << ',' << v << '\n';
  if (observed != nullptr) s << observed_label << ',' << *observed << '\n';
  write_text(path, s.str());
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string fmt(double v, int precision = 3) {
  std::ostringstream s;
  s.precision(precision);
  s << v;
  return s.str();
}

struct Bins {
  double lo = 0.0;
  double width = 1.0;
  std::size_t count = 1;
};

// Freedman-Diaconis on the pooled finite samples of one cell.
Bins freedman_diaconis(std::vector<double> pooled) {
  Bins b;
  pooled.erase(std::remove_if(pooled.begin(), pooled.end(), [](double v) { return !std::isfinite(v); }), pooled.end());
  if (pooled.empty()) return b;
  std::sort(pooled.begin(), pooled.end());
  const double lo = pooled.front();
  const double hi = pooled.back();
  b.lo = lo;
  if (hi <= lo) {
    b.lo = lo - 0.5;
    return b;
  }
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(pooled.size() - 1);
    const auto i = static_cast<std::size_t>(pos);
    const double f = pos - static_cast<double>(i);
    return i + 1 < pooled.size() ? pooled[i] * (1 - f) + pooled[i + 1] * f : pooled[i];
  };
  const double iqr = quantile(0.75) - quantile(0.25);
  double h = 2.0 * iqr * std::pow(static_cast<double>(pooled.size()), -1.0 / 3.0);
  if (!(h > 0.0)) h = (hi - lo) / std::sqrt(static_cast<double>(pooled.size()));
  b.count = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil((hi - lo) / h)), 1, 100);
  b.width = (hi - lo) / static_cast<double>(b.count);
  return b;
}

std::vector<double> histogram(const std::vector<double>& v, const Bins& b) {
  std::vector<double> h(b.count, 0.0);
  std::size_t finite = 0;
  for (double x : v) {
    if (!std::isfinite(x)) continue;
    ++finite;
    auto i = static_cast<long long>(std::floor((x - b.lo) / b.width));
    i = std::clamp<long long>(i, 0, static_cast<long long>(b.count) - 1);
    h[static_cast<std::size_t>(i)] += 1.0;
  }
  // Densities so two sources overlay on a common scale.
  if (finite > 0)
    for (double& x : h) x /= static_cast<double>(finite) * b.width;
  return h;
}

constexpr double kCellW = 220.0;
constexpr double kCellH = 160.0;
constexpr double kMargin = 40.0;
constexpr double kPad = 14.0;

void draw_histogram(std::ostringstream& svg, double x0, double y0, const std::vector<double>& h, const Bins& b,
                    double peak, const char* color) {
  const double plot_w = kCellW - 2 * kPad;
  const double plot_h = kCellH - 2 * kPad - 14;
  const double bar_w = plot_w / static_cast<double>(b.count);
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i] <= 0.0) continue;
    const double bh = peak > 0 ? plot_h * h[i] / peak : 0.0;
    svg << "<rect x=\"" << fmt(x0 + kPad + bar_w * static_cast<double>(i), 6) << "\" y=\""
        << fmt(y0 + kPad + 14 + plot_h - bh, 6) << "\" width=\"" << fmt(bar_w, 6) << "\" height=\"" << fmt(bh, 6)
        << "\" fill=\"" << color << "\" fill-opacity=\"0.5\"/>\n";
  }
}

}  // namespace

std::string file_stem(const std::string& id) {
  std::string s;
  for (char c : id) s += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return s.empty() ? "model" : s;
}

Json to_json(const CheckOutcome& c) {
  Json j;
  j["model"] = c.model;
  j["p"] = number(c.p_value);
  j["pass"] = c.pass;
  j["observed"] = number(c.diagnostic_observed);
  j["replicates"] = numbers(c.diagnostic_replicates);
  return j;
}

Json to_json(const PpnOutcome& p) {
  Json j;
  j["diag_owner"] = p.diagnostic_owner;
  j["data_source"] = p.data_source;
  j["sym_kl"] = number(p.sym_kl);
  j["fools"] = p.fools;
  j["unchecked"] = p.unchecked;
  j["samples_a"] = numbers(p.samples_a);
  j["samples_b"] = numbers(p.samples_b);
  return j;
}

Json to_json(const StudyReport& r) {
  Json j;
  j["models"] = r.models;
  j["alpha"] = r.alpha;
  j["tau"] = r.tau;
  j["mode"] = mode_name(r.mode);
  j["diagonal"] = Json::array();
  for (const auto& c : r.diagonal) j["diagonal"].push_back(to_json(c));
  j["pairs"] = Json::array();
  for (const auto& p : r.off_diagonal) j["pairs"].push_back(to_json(p));
  j["verdicts"] = Json::array();
  for (const auto& v : r.verdicts) j["verdicts"].push_back(Json{{"a", v.a}, {"b", v.b}, {"class", to_string(v.verdict)}});
  return j;
}

CheckOutcome check_from_json(const Json& j) {
  CheckOutcome c;
  c.model = j.at("model").get<std::string>();
  c.p_value = number_from(j.at("p"));
  c.pass = j.at("pass").get<bool>();
  c.diagnostic_observed = number_from(j.at("observed"));
  c.diagnostic_replicates = numbers_from(j.at("replicates"));
  return c;
}

PpnOutcome ppn_from_json(const Json& j) {
  PpnOutcome p;
  p.diagnostic_owner = j.at("diag_owner").get<std::string>();
  p.data_source = j.at("data_source").get<std::string>();
  p.sym_kl = number_from(j.at("sym_kl"));
  p.fools = j.at("fools").get<bool>();
  p.unchecked = j.value("unchecked", false);
  p.samples_a = numbers_from(j.at("samples_a"));
  p.samples_b = numbers_from(j.at("samples_b"));
  return p;
}

StudyReport report_from_json(const Json& j) {
  try {
    StudyReport r;
    r.models = j.at("models").get<std::vector<std::string>>();
    r.alpha = j.at("alpha").get<double>();
    r.tau = j.at("tau").get<double>();
    r.mode = mode_from(j.value("mode", std::string("full")));
    for (const auto& c : j.at("diagonal")) r.diagonal.push_back(check_from_json(c));
    for (const auto& p : j.at("pairs")) r.off_diagonal.push_back(ppn_from_json(p));
    for (const auto& v : j.at("verdicts")) {
      r.verdicts.push_back(PairVerdict{v.at("a").get<std::string>(), v.at("b").get<std::string>(),
                                       verdict_from_string(v.at("class").get<std::string>())});
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("report: malformed JSON: ") + e.what());
  }
}

std::string dump_report(const StudyReport& r) { return to_json(r).dump(2) + "\n"; }

std::string render_grid_svg(const Json& report) {
  const auto models = report.at("models").get<std::vector<std::string>>();
  const std::size_t M = models.size();
  auto index_of = [&](const std::string& id) {
    return static_cast<std::size_t>(std::find(models.begin(), models.end(), id) - models.begin());
  };
  const auto& pairs = report.at("pairs");
  const double footer_h = 24.0 + 16.0 * static_cast<double>(pairs.size());
  const double width = 2 * kMargin + kCellW * static_cast<double>(M);
  const double height = 2 * kMargin + kCellH * static_cast<double>(M) + footer_h;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width, 6) << "\" height=\"" << fmt(height, 6)
      << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < M; ++i) {
    svg << "<text x=\"" << fmt(kMargin + kCellW * (static_cast<double>(i) + 0.5), 6) << "\" y=\"" << fmt(kMargin - 8, 6)
        << "\" text-anchor=\"middle\">data: " << escape_xml(models[i]) << "</text>\n";
    svg << "<text x=\"" << fmt(kMargin - 8, 6) << "\" y=\"" << fmt(kMargin + kCellH * (static_cast<double>(i) + 0.5), 6)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 " << fmt(kMargin - 8, 6) << ' '
        << fmt(kMargin + kCellH * (static_cast<double>(i) + 0.5), 6) << ")\">diagnostic: " << escape_xml(models[i])
        << "</text>\n";
  }
  auto frame = [&](std::size_t row, std::size_t col) {
    const double x0 = kMargin + kCellW * static_cast<double>(col);
    const double y0 = kMargin + kCellH * static_cast<double>(row);
    svg << "<rect x=\"" << fmt(x0, 6) << "\" y=\"" << fmt(y0, 6) << "\" width=\"" << fmt(kCellW, 6) << "\" height=\""
        << fmt(kCellH, 6) << "\" fill=\"none\" stroke=\"#999\"/>\n";
    return std::pair{x0, y0};
  };

  for (const auto& c : report.at("diagonal")) {
    const std::size_t i = index_of(c.at("model").get<std::string>());
    const auto [x0, y0] = frame(i, i);
    const auto reps = numbers_from(c.at("replicates"));
    const double observed = number_from(c.at("observed"));
    auto pooled = reps;
    pooled.push_back(observed);
    const Bins b = freedman_diaconis(pooled);
    const auto h = histogram(reps, b);
    draw_histogram(svg, x0, y0, h, b, *std::max_element(h.begin(), h.end()), "#1f77b4");
    if (std::isfinite(observed)) {
      const double plot_w = kCellW - 2 * kPad;
      const double span = b.width * static_cast<double>(b.count);
      const double ox = x0 + kPad + plot_w * std::clamp((observed - b.lo) / span, 0.0, 1.0);
      svg << "<line x1=\"" << fmt(ox, 6) << "\" y1=\"" << fmt(y0 + kPad + 14, 6) << "\" x2=\"" << fmt(ox, 6)
          << "\" y2=\"" << fmt(y0 + kCellH - kPad, 6) << "\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
    }
    svg << "<text x=\"" << fmt(x0 + kPad, 6) << "\" y=\"" << fmt(y0 + kPad + 4, 6) << "\">p = "
        << fmt(number_from(c.at("p")), 4) << (c.at("pass").get<bool>() ? " (pass)" : " (fail)") << "</text>\n";
  }

  for (const auto& p : pairs) {
    const std::size_t row = index_of(p.at("diag_owner").get<std::string>());
    const std::size_t col = index_of(p.at("data_source").get<std::string>());
    const auto [x0, y0] = frame(row, col);
    const auto a = numbers_from(p.at("samples_a"));
    const auto bsamp = numbers_from(p.at("samples_b"));
    auto pooled = a;
    pooled.insert(pooled.end(), bsamp.begin(), bsamp.end());
    const Bins b = freedman_diaconis(pooled);
    const auto ha = histogram(a, b);
    const auto hb = histogram(bsamp, b);
    const double peak = std::max(*std::max_element(ha.begin(), ha.end()), *std::max_element(hb.begin(), hb.end()));
    draw_histogram(svg, x0, y0, ha, b, peak, "#1f77b4");
    draw_histogram(svg, x0, y0, hb, b, peak, "#ff7f0e");
    svg << "<text x=\"" << fmt(x0 + kPad, 6) << "\" y=\"" << fmt(y0 + kPad + 4, 6) << "\">symKL = "
        << fmt(number_from(p.at("sym_kl")), 4) << (p.at("fools").get<bool>() ? " (fools)" : "") << "</text>\n";
  }

  double y = kMargin + kCellH * static_cast<double>(M) + 24.0;
  svg << "<text x=\"" << fmt(kMargin, 6) << "\" y=\"" << fmt(y, 6)
      << "\" font-weight=\"bold\">diagnostic owner / data source / symmetric KL / fools (tau = "
      << fmt(report.at("tau").get<double>(), 4) << ")</text>\n";
  for (const auto& p : pairs) {
    y += 16.0;
    svg << "<text x=\"" << fmt(kMargin, 6) << "\" y=\"" << fmt(y, 6) << "\">"
        << escape_xml(p.at("diag_owner").get<std::string>()) << " / " << escape_xml(p.at("data_source").get<std::string>())
        << " / " << fmt(number_from(p.at("sym_kl")), 4) << " / " << (p.at("fools").get<bool>() ? "yes" : "no")
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_report(const StudyReport& report, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  const auto json_path = out_dir / "report.json";
  write_text(json_path, dump_report(report));

  for (const auto& c : report.diagonal) {
    write_cell_csv(out_dir / ("check_" + file_stem(c.model) + ".csv"), {{c.model, &c.diagnostic_replicates}},
                   "observed", &c.diagnostic_observed);
  }
  for (const auto& p : report.off_diagonal) {
    write_cell_csv(out_dir / ("ppn_" + file_stem(p.diagnostic_owner) + "__" + file_stem(p.data_source) + ".csv"),
                   {{p.diagnostic_owner, &p.samples_a}, {p.data_source, &p.samples_b}}, "", nullptr);
  }

  std::ifstream in(json_path);
  if (!in) throw IoError("cannot read back " + json_path.string());
  const Json parsed = Json::parse(in);
  write_text(out_dir / "grid.svg", render_grid_svg(parsed));
}

}  // namespace ppn
