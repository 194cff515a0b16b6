#include "survest/params_io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "survest/errors.hpp"

namespace survest {

namespace {

const char* kKeys[] = {"N", "n", "Ybar", "Xbar", "Sx2", "Sy2", "rho", "R", "Rstar_bar"};

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

SummaryParams params_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::map<std::string, double> kv;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = strip(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value", line_no);
        const std::string key = strip(t.substr(0, eq));
        const std::string val = strip(t.substr(eq + 1));
        bool known = false;
        for (const char* k : kKeys)
            if (key == k) known = true;
        if (!known) throw ParseError("unknown key '" + key + "'", line_no);
        if (kv.count(key)) throw ParseError("duplicate key '" + key + "'", line_no);
        try {
            std::size_t pos = 0;
            const double v = std::stod(val, &pos);
            if (pos != val.size() || !std::isfinite(v))
                throw ParseError("invalid value '" + val + "'", line_no);
            kv[key] = v;
        } catch (const std::invalid_argument&) {
            throw ParseError("invalid value '" + val + "'", line_no);
        }
    }
    for (const char* k : kKeys)
        if (!kv.count(k)) throw ParseError(std::string("missing key '") + k + "'", line_no + 1);

    return params_from_constants(static_cast<int>(kv["N"]), static_cast<int>(kv["n"]),
                                 kv["Ybar"], kv["Xbar"], kv["Sx2"], kv["Sy2"], kv["rho"],
                                 kv["R"], kv["Rstar_bar"]);
}

SummaryParams load_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open params file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return params_from_text(buf.str());
}

}  // namespace survest
