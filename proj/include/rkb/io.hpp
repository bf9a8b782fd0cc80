#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "rkb/model.hpp"

namespace rkb {

enum class Command { none, params_report, shift_profile, section, orbit, periodic, twist, caustics, oracle_check };

const char* to_string(Command c);
Command command_from_string(const std::string& s);  // ConfigError on unknown names

struct RunConfig {
    PhysParams params;
    PerturbationProfile profile = PerturbationProfile::circle();
    Command command = Command::none;
    int seeds = 24;
    int iterations = 400;
    double tol = 1e-6;
    // extra [command] keys
    std::vector<double> actions;  // seed actions for orbit / caustics / shift-profile
    int m = 0;
    int n = 1;
};

// [params] energy_E offset_h mass_mu stiffness_om
// [profile] epsilon fourier_cos fourier_sin (comma lists)
// [command] command seeds iterations tol, plus actions m n
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

struct RunOptions {
    std::string out_dir = ".";
    int workers = 1;
    bool verbose = false;
};

// returns the process exit status; artifacts go to out_dir
int run(const RunConfig& cfg, const RunOptions& opt, std::ostream& log);

std::string usage_text();

// plain SVG writer: data coordinates mapped into a fixed canvas
class Svg {
public:
    Svg(double xmin, double xmax, double ymin, double ymax, int width = 640, int height = 480);

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color, double width = 1.0);
    void axes(const std::string& xlabel, const std::string& ylabel);
    void title(const std::string& text);
    std::string str() const;
    void save(const std::string& path) const;

private:
    double px(double x) const;
    double py(double y) const;

    double xmin_, xmax_, ymin_, ymax_;
    int w_, h_;
    std::vector<std::string> body_;
};

}  // namespace rkb
