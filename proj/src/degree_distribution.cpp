#include "cgrid/degree_distribution.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cgrid {

DegreeDistribution::DegreeDistribution(std::vector<double> pmf)
    : pmf_(std::move(pmf)) {
    double m = 0.0;
    for (std::size_t k = 0; k < pmf_.size(); ++k)
        m += static_cast<double>(k) * pmf_[k];
    mean_ = m;
}

DegreeDistribution DegreeDistribution::from_pmf(std::vector<double> pmf) {
    double sum = 0.0;
    for (double q : pmf) {
        if (q < 0.0 || !std::isfinite(q))
            throw std::invalid_argument("pmf entry negative or non-finite");
        sum += q;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("pmf does not sum to 1 (sum = " +
                                    std::to_string(sum) + ")");
    return DegreeDistribution(std::move(pmf));
}

DegreeDistribution DegreeDistribution::from_weights(std::vector<double> weights) {
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0 || !std::isfinite(w))
            throw std::invalid_argument("weight negative or non-finite");
        sum += w;
    }
    if (sum <= 0.0)
        throw std::invalid_argument("total weight must be positive");
    for (double& w : weights) w /= sum;
    return DegreeDistribution(std::move(weights));
}

DegreeDistribution DegreeDistribution::from_counts(const std::vector<std::size_t>& counts) {
    std::vector<double> w(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k)
        w[k] = static_cast<double>(counts[k]);
    return from_weights(std::move(w));
}

double DegreeDistribution::pgf(double s) const {
    // Horner over the dense pmf
    double acc = 0.0;
    for (std::size_t i = pmf_.size(); i-- > 0;)
        acc = acc * s + pmf_[i];
    return acc;
}

DegreeDistribution load_pmf_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open pmf csv: " + path);
    std::vector<double> pmf;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("k,", 0) == 0) continue;  // header
        std::istringstream ls(line);
        std::size_t k;
        char comma;
        double prob;
        ls >> k >> comma >> prob;
        if (ls.fail() || comma != ',')
            throw std::runtime_error(path + " line " + std::to_string(lineno) +
                                     ": expected 'k,probability'");
        if (k >= pmf.size()) pmf.resize(k + 1, 0.0);
        pmf[k] = prob;
    }
    return DegreeDistribution::from_pmf(std::move(pmf));
}

void save_pmf_csv(const DegreeDistribution& dist, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write pmf csv: " + path);
    out << "k,probability\n";
    char buf[64];
    for (std::size_t k = 0; k < dist.pmf().size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", k, dist.pmf()[k]);
        out << buf;
    }
}

}  // namespace cgrid
