#include "qns/experiment_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qns/report.hpp"

namespace qns {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(std::stod(item));
    }
    if (out.empty()) throw std::invalid_argument("config: empty list");
    return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
    ExperimentConfig cfg;
    bool seed_seen = false;
    std::istringstream is(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config line " + std::to_string(line_no) +
                                            ": malformed section header");
            section = line.substr(1, line.size() - 2);
            if (section != "grid" && section != "balls" && section != "time" &&
                section != "solver" && section != "corpus" && section != "output")
                throw std::invalid_argument("config: unknown section [" + section + "]");
            continue;
        }

        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        std::string qual = section + "." + key;

        try {
            if (qual == "grid.dims") cfg.dims = std::stoi(val);
            else if (qual == "grid.resolution") cfg.resolution = std::stoi(val);
            else if (qual == "grid.box_length") cfg.box_length = std::stod(val);
            else if (qual == "balls.radius_levels") cfg.radius_levels = std::stoi(val);
            else if (qual == "balls.stride_factor") cfg.stride_factor = std::stod(val);
            else if (qual == "time.ratio") cfg.ratio = std::stod(val);
            else if (qual == "time.levels") cfg.levels = std::stoi(val);
            else if (qual == "time.t_cap") cfg.t_cap = std::stod(val);
            else if (qual == "solver.alpha") cfg.alpha = std::stod(val);
            else if (qual == "solver.alphas") cfg.alphas = parse_list(val);
            else if (qual == "solver.picard_iterations") cfg.picard_iterations = std::stoi(val);
            else if (qual == "solver.duhamel_cells") cfg.duhamel_cells = std::stoi(val);
            else if (qual == "solver.smallness_threshold")
                cfg.smallness_threshold = std::stod(val);
            else if (qual == "solver.initial") cfg.initial = val;
            else if (qual == "solver.cross_check_steps") cfg.cross_check_steps = std::stoi(val);
            else if (qual == "corpus.seed") {
                cfg.seed = std::stoull(val);
                seed_seen = true;
            } else if (qual == "corpus.n_trajectories") cfg.n_trajectories = std::stoi(val);
            else if (qual == "output.write_fields") cfg.write_fields = (val == "true" || val == "1");
            else
                throw std::invalid_argument("config: unknown key '" + key + "' in [" +
                                            section + "]");
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": bad value for " + qual);
        }
    }
    if (!seed_seen) throw std::invalid_argument("config: [corpus] seed is mandatory");
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse(ss.str());
}

std::string ExperimentConfig::materialize() const {
    std::ostringstream os;
    os << "[grid]\n";
    os << "dims = " << dims << '\n';
    os << "resolution = " << resolution << '\n';
    os << "box_length = " << format_g17(box_length) << '\n';
    os << "[balls]\n";
    os << "radius_levels = " << radius_levels << '\n';
    os << "stride_factor = " << format_g17(stride_factor) << '\n';
    os << "[time]\n";
    os << "ratio = " << format_g17(ratio) << '\n';
    os << "levels = " << levels << '\n';
    os << "t_cap = " << format_g17(t_cap) << '\n';
    os << "[solver]\n";
    os << "alpha = " << format_g17(alpha) << '\n';
    os << "alphas = ";
    for (std::size_t i = 0; i < alphas.size(); ++i)
        os << format_g17(alphas[i]) << (i + 1 < alphas.size() ? "," : "");
    os << '\n';
    os << "picard_iterations = " << picard_iterations << '\n';
    os << "duhamel_cells = " << duhamel_cells << '\n';
    os << "smallness_threshold = " << format_g17(smallness_threshold) << '\n';
    os << "initial = " << initial << '\n';
    os << "cross_check_steps = " << cross_check_steps << '\n';
    os << "[corpus]\n";
    os << "seed = " << seed << '\n';
    os << "n_trajectories = " << n_trajectories << '\n';
    os << "[output]\n";
    os << "write_fields = " << (write_fields ? "true" : "false") << '\n';
    return os.str();
}

std::string ExperimentConfig::config_hash() const { return hash_hex(materialize()); }

double ExperimentConfig::effective_t_cap() const {
    return t_cap > 0.0 ? t_cap : std::pow(box_length / 8.0, 2);
}

}  // namespace qns
