#pragma once

// Minimal deterministic SVG writer for report plots.

#include <string>
#include <string_view>
#include <vector>

namespace uav::svg {

// Fixed "%.6g"-style formatting, identical on every platform.
std::string num(double v);
std::string escape(std::string_view text);

// Data-to-pixel mapping of a rectangular plot area.
struct Frame {
  double width = 480.0, height = 480.0;
  double margin = 48.0;
  double x_min = -1.0, x_max = 1.0;
  double y_min = -1.0, y_max = 1.0;

  double px(double x) const;
  double py(double y) const;
};

class Document {
 public:
  Document(double width, double height);

  void line(double x1, double y1, double x2, double y2, std::string_view style);
  void rect(double x, double y, double w, double h, std::string_view style);
  void circle(double cx, double cy, double r, std::string_view style);
  void text(double x, double y, std::string_view content, std::string_view style);
  void cross(double cx, double cy, double half, std::string_view style);
  void comment(std::string_view content);

  std::string str() const;

 private:
  double width_, height_;
  std::vector<std::string> items_;
};

// Axes box with min/max tick labels and axis titles.
void draw_axes(Document& doc, const Frame& frame, std::string_view x_label,
               std::string_view y_label, std::string_view title);

struct HistogramBin {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
};

// Equal-width bins over [min, max] of the samples.
std::vector<HistogramBin> histogram(const std::vector<double>& samples, std::size_t bins);

std::string histogram_svg(const std::vector<HistogramBin>& bins, std::string_view title,
                          std::string_view x_label);

}  // namespace uav::svg
