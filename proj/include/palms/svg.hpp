#pragma once

#include <string>
#include <vector>

namespace palms {

struct SvgSeries {
    std::string name;
    std::vector<double> xs;
    std::vector<double> ys;
};

void svg_line_chart(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<SvgSeries>& series);

void svg_bar_chart(const std::string& path, const std::string& title,
                   const std::string& y_label, const std::vector<std::string>& labels,
                   const std::vector<double>& values);

}  // namespace palms
