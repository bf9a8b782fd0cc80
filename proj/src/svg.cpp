#include <cstdio>
#include <fstream>
#include <sstream>

#include "rkb/errors.hpp"
#include "rkb/io.hpp"

namespace rkb {

namespace {
const double kMargin = 50.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string o;
    for (char c : s) {
        if (c == '<') o += "&lt;";
        else if (c == '>') o += "&gt;";
        else if (c == '&') o += "&amp;";
        else o += c;
    }
    return o;
}
}  // namespace

Svg::Svg(double xmin, double xmax, double ymin, double ymax, int width, int height)
    : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax), w_(width), h_(height) {
    if (!(xmax > xmin) || !(ymax > ymin)) throw DomainError("empty plot range");
}

double Svg::px(double x) const { return kMargin + (x - xmin_) / (xmax_ - xmin_) * (w_ - 2 * kMargin); }
double Svg::py(double y) const { return h_ - kMargin - (y - ymin_) / (ymax_ - ymin_) * (h_ - 2 * kMargin); }

void Svg::polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color, double width) {
    if (pts.empty()) return;
    std::string s = "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + num(width) + "\" points=\"";
    for (const auto& [x, y] : pts) s += num(px(x)) + "," + num(py(y)) + " ";
    s.back() = '"';
    s += "/>";
    body_.push_back(std::move(s));
}

void Svg::axes(const std::string& xlabel, const std::string& ylabel) {
    polyline({{xmin_, ymin_}, {xmax_, ymin_}}, "black");
    polyline({{xmin_, ymin_}, {xmin_, ymax_}}, "black");
    auto text = [&](double x, double y, const std::string& t, const char* anchor) {
        body_.push_back("<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"12\" text-anchor=\"" + anchor +
                        "\">" + escape(t) + "</text>");
    };
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", xmin_);
    text(px(xmin_), h_ - kMargin + 16, buf, "middle");
    std::snprintf(buf, sizeof buf, "%.3g", xmax_);
    text(px(xmax_), h_ - kMargin + 16, buf, "middle");
    std::snprintf(buf, sizeof buf, "%.3g", ymin_);
    text(kMargin - 6, py(ymin_), buf, "end");
    std::snprintf(buf, sizeof buf, "%.3g", ymax_);
    text(kMargin - 6, py(ymax_), buf, "end");
    text(w_ / 2.0, h_ - 12.0, xlabel, "middle");
    text(14.0, h_ / 2.0, ylabel, "middle");
}

void Svg::title(const std::string& t) {
    body_.push_back("<text x=\"" + num(w_ / 2.0) + "\" y=\"20\" font-size=\"14\" text-anchor=\"middle\">" + escape(t) +
                    "</text>");
}

std::string Svg::str() const {
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w_ << "\" height=\"" << h_ << "\" viewBox=\"0 0 " << w_
      << " " << h_ << "\">\n";
    for (const auto& b : body_) o << b << "\n";
    o << "</svg>\n";
    return o.str();
}

void Svg::save(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + path);
    f << str();
}

}  // namespace rkb
