#include "uav/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace uav::svg {

std::string num(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

double Frame::px(double x) const {
  return margin + (x - x_min) / (x_max - x_min) * (width - 2.0 * margin);
}

double Frame::py(double y) const {
  return height - margin - (y - y_min) / (y_max - y_min) * (height - 2.0 * margin);
}

Document::Document(double width, double height) : width_(width), height_(height) {}

void Document::line(double x1, double y1, double x2, double y2, std::string_view style) {
  items_.push_back("<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) +
                   "\" y2=\"" + num(y2) + "\" style=\"" + std::string(style) + "\"/>");
}

void Document::rect(double x, double y, double w, double h, std::string_view style) {
  items_.push_back("<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) +
                   "\" height=\"" + num(h) + "\" style=\"" + std::string(style) + "\"/>");
}

void Document::circle(double cx, double cy, double r, std::string_view style) {
  items_.push_back("<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) +
                   "\" style=\"" + std::string(style) + "\"/>");
}

void Document::text(double x, double y, std::string_view content, std::string_view style) {
  items_.push_back("<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" style=\"" +
                   std::string(style) + "\">" + escape(content) + "</text>");
}

void Document::cross(double cx, double cy, double half, std::string_view style) {
  line(cx - half, cy - half, cx + half, cy + half, style);
  line(cx - half, cy + half, cx + half, cy - half, style);
}

void Document::comment(std::string_view content) {
  items_.push_back("<!-- " + std::string(content) + " -->");
}

std::string Document::str() const {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width_) + "\" height=\"" +
         num(height_) + "\" viewBox=\"0 0 " + num(width_) + " " + num(height_) + "\">\n";
  for (const auto& item : items_) out += "  " + item + "\n";
  out += "</svg>\n";
  return out;
}

void draw_axes(Document& doc, const Frame& f, std::string_view x_label, std::string_view y_label,
               std::string_view title) {
  constexpr std::string_view kBox = "fill:none;stroke:#444;stroke-width:1";
  constexpr std::string_view kLabel = "font-family:sans-serif;font-size:11px;fill:#222";
  doc.rect(0, 0, f.width, f.height, "fill:#fff;stroke:none");
  doc.rect(f.margin, f.margin, f.width - 2 * f.margin, f.height - 2 * f.margin, kBox);
  const double bottom = f.height - f.margin;
  doc.text(f.margin, bottom + 14, num(f.x_min), kLabel);
  doc.text(f.width - f.margin - 24, bottom + 14, num(f.x_max), kLabel);
  doc.text(4, bottom, num(f.y_min), kLabel);
  doc.text(4, f.margin + 4, num(f.y_max), kLabel);
  doc.text(f.width / 2 - 30, f.height - 8, x_label, kLabel);
  doc.text(4, f.height / 2, y_label, kLabel);
  doc.text(f.margin, f.margin - 12, title, "font-family:sans-serif;font-size:14px;fill:#000");
}

std::vector<HistogramBin> histogram(const std::vector<double>& samples, std::size_t bins) {
  std::vector<HistogramBin> out;
  if (samples.empty() || bins == 0) return out;
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  double lo = *lo_it, hi = *hi_it;
  if (hi <= lo) hi = lo + 1.0;
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t i = 0; i < bins; ++i)
    out.push_back({lo + width * static_cast<double>(i), lo + width * static_cast<double>(i + 1), 0});
  for (double s : samples) {
    auto index = static_cast<std::size_t>(std::floor((s - lo) / width));
    out[std::min(index, bins - 1)].count += 1;
  }
  return out;
}

std::string histogram_svg(const std::vector<HistogramBin>& bins, std::string_view title,
                          std::string_view x_label) {
  Frame f;
  f.width = 560;
  f.height = 360;
  std::size_t peak = 1;
  for (const auto& b : bins) peak = std::max(peak, b.count);
  if (!bins.empty()) {
    f.x_min = bins.front().lower;
    f.x_max = bins.back().upper;
  }
  f.y_min = 0.0;
  f.y_max = static_cast<double>(peak);
  Document doc(f.width, f.height);
  draw_axes(doc, f, x_label, "runs", title);
  for (const auto& b : bins) {
    if (b.count == 0) continue;
    const double x0 = f.px(b.lower), x1 = f.px(b.upper);
    const double y1 = f.py(static_cast<double>(b.count));
    doc.rect(x0, y1, x1 - x0, f.py(0.0) - y1, "fill:#4a7bb7;stroke:#1f3f66;stroke-width:0.5");
  }
  return doc.str();
}

}  // namespace uav::svg
