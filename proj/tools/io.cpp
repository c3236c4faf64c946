#include "io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cpcfif::io {

namespace {

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
    s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && (s[b] == ' ' || s[b] == '\t')) ++b;
  return s.substr(b);
}

std::string format(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

DataSet read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open input file: " + path.string());
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("empty CSV: " + path.string());
  if (trim(line) != "x,y")
    throw std::invalid_argument("CSV must start with header 'x,y': " +
                                path.string());
  std::vector<double> xs, us;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto comma = t.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("CSV row " + std::to_string(lineno) +
                                  " is not 'x,y'");
    try {
      xs.push_back(std::stod(t.substr(0, comma)));
      us.push_back(std::stod(t.substr(comma + 1)));
    } catch (const std::exception&) {
      throw std::invalid_argument("CSV row " + std::to_string(lineno) +
                                  " is not numeric");
    }
  }
  return DataSet(std::move(xs), std::move(us));
}

void write_csv(const std::filesystem::path& path,
               const std::vector<Column>& columns) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write: " + path.string());
  for (std::size_t c = 0; c < columns.size(); ++c)
    out << (c ? "," : "") << columns[c].name;
  out << "\n";
  const std::size_t rows = columns.empty() ? 0 : columns[0].values->size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c)
      out << (c ? "," : "") << format((*columns[c].values)[r]);
    out << "\n";
  }
  if (!out) throw io_error("write failed: " + path.string());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write: " + path.string());
  out << text;
  if (!out) throw io_error("write failed: " + path.string());
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  write_text(path, j.dump(2) + "\n");
}

std::string svg_plot(const std::string& title, const std::vector<double>& x,
                     const std::vector<Series>& series) {
  constexpr int W = 720, H = 440, ML = 60, MR = 150, MT = 40, MB = 40;
  double ymin = 0.0, ymax = 1.0, xmin = 0.0, xmax = 1.0;
  if (!x.empty()) {
    xmin = x.front();
    xmax = x.back();
    ymin = 1e300;
    ymax = -1e300;
    for (const Series& s : series)
      for (double v : *s.y) {
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
      }
    if (!(ymax > ymin)) {
      ymin -= 1.0;
      ymax += 1.0;
    }
  }
  const double xs = (W - ML - MR) / (xmax - xmin);
  const double ys = (H - MT - MB) / (ymax - ymin);
  auto px = [&](double v) { return ML + (v - xmin) * xs; };
  auto py = [&](double v) { return H - MB - (v - ymin) * ys; };

  std::ostringstream svg;
  svg.setf(std::ios::fixed);
  svg.precision(2);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\">\n";
  svg << "<rect width=\"" << W << "\" height=\"" << H
      << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << ML << "\" y=\"24\" font-size=\"15\" "
         "font-family=\"sans-serif\">"
      << title << "</text>\n";
  svg << "<rect x=\"" << ML << "\" y=\"" << MT << "\" width=\"" << W - ML - MR
      << "\" height=\"" << H - MT - MB
      << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = xmin + (xmax - xmin) * k / 4.0;
    const double yv = ymin + (ymax - ymin) * k / 4.0;
    svg << "<text x=\"" << px(xv) - 10 << "\" y=\"" << H - MB + 18
        << "\" font-size=\"11\" font-family=\"sans-serif\">" << xv
        << "</text>\n";
    svg << "<text x=\"8\" y=\"" << py(yv) + 4
        << "\" font-size=\"11\" font-family=\"sans-serif\">" << yv
        << "</text>\n";
  }
  int legend_y = MT + 14;
  for (const Series& s : series) {
    svg << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i)
      svg << px(x[i]) << "," << py((*s.y)[i]) << " ";
    svg << "\"/>\n";
    svg << "<line x1=\"" << W - MR + 10 << "\" y1=\"" << legend_y << "\" x2=\""
        << W - MR + 34 << "\" y2=\"" << legend_y << "\" stroke=\"" << s.color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << W - MR + 40 << "\" y=\"" << legend_y + 4
        << "\" font-size=\"12\" font-family=\"sans-serif\">" << s.label
        << "</text>\n";
    legend_y += 18;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace cpcfif::io
