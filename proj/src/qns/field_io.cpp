#include "qns/field_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qns {

namespace {

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_header(std::ostream& os, const Grid& g) {
    os << "QNSF1 " << g.dims();
    for (int a = 0; a < g.dims(); ++a) os << ' ' << g.res(a);
    os << ' ' << g17(g.box()) << '\n';
}

void write_values(std::ostream& os, const Grid& g, const std::vector<double>& v) {
    int per_line = g.res(g.dims() - 1);
    for (std::size_t i = 0; i < v.size(); ++i) {
        os << g17(v[i]);
        os << (((i + 1) % per_line == 0) ? '\n' : ' ');
    }
}

Grid read_header(std::istream& is) {
    std::string magic;
    if (!(is >> magic) || magic != "QNSF1")
        throw std::runtime_error("field read: missing QNSF1 header");
    int dims;
    if (!(is >> dims) || (dims != 2 && dims != 3))
        throw std::runtime_error("field read: bad dimension count");
    std::array<int, 3> res{1, 1, 1};
    for (int a = 0; a < dims; ++a)
        if (!(is >> res[a])) throw std::runtime_error("field read: bad resolution");
    double L;
    if (!(is >> L)) throw std::runtime_error("field read: bad box length");
    return Grid(dims, res, L);
}

std::vector<double> read_values(std::istream& is, std::size_t count) {
    std::vector<double> v(count);
    for (auto& x : v)
        if (!(is >> x)) throw std::runtime_error("field read: truncated value block");
    return v;
}

}  // namespace

void write_field(std::ostream& os, const ScalarField& f) {
    write_header(os, f.grid());
    write_values(os, f.grid(), f.values());
}

void write_field(std::ostream& os, const VectorField& u) {
    write_header(os, u.grid());
    for (int a = 0; a < u.dims(); ++a) {
        os << "component " << a << '\n';
        write_values(os, u.grid(), u[a].values());
    }
}

AnyField read_field(std::istream& is) {
    Grid g = read_header(is);
    // Peek one token: `component` marks a vector block.
    std::streampos mark = is.tellg();
    std::string tok;
    if (!(is >> tok)) throw std::runtime_error("field read: empty value block");
    if (tok == "component") {
        std::vector<ScalarField> comps;
        for (int a = 0; a < g.dims(); ++a) {
            if (a > 0) {
                if (!(is >> tok) || tok != "component")
                    throw std::runtime_error("field read: missing component separator");
            }
            int idx;
            if (!(is >> idx) || idx != a)
                throw std::runtime_error("field read: components out of order");
            comps.push_back(ScalarField::from_values(g, read_values(is, g.size())));
        }
        return VectorField(std::move(comps));
    }
    is.seekg(mark);
    return ScalarField::from_values(g, read_values(is, g.size()));
}

void write_field_file(const std::string& path, const ScalarField& f) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_field(os, f);
}

void write_field_file(const std::string& path, const VectorField& u) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_field(os, u);
}

AnyField read_field_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    return read_field(is);
}

void write_trajectory(std::ostream& os, const Trajectory& g) {
    os << "QNST1 " << g.size() << '\n';
    for (int k = 0; k < g.size(); ++k) {
        os << "t " << g17(g.time(k)) << '\n';
        if (g.is_vector())
            write_field(os, g.vector_node(k));
        else
            write_field(os, g.scalar_node(k));
    }
}

Trajectory read_trajectory(std::istream& is) {
    std::string magic;
    if (!(is >> magic) || magic != "QNST1")
        throw std::runtime_error("trajectory read: missing QNST1 header");
    int n_nodes;
    if (!(is >> n_nodes) || n_nodes < 1)
        throw std::runtime_error("trajectory read: bad node count");

    std::vector<double> times(n_nodes);
    std::vector<AnyField> fields;
    for (int k = 0; k < n_nodes; ++k) {
        std::string tok;
        if (!(is >> tok) || tok != "t")
            throw std::runtime_error("trajectory read: missing time line");
        if (!(is >> times[k])) throw std::runtime_error("trajectory read: bad time value");
        fields.push_back(read_field(is));
    }

    // Recover the geometric mesh from the stored samples: s_k = t_cap r^{k+1/2}.
    double ratio = n_nodes > 1 ? times[1] / times[0] : 0.5;
    if (!(ratio > 0.0 && ratio < 1.0))
        throw std::runtime_error("trajectory read: samples are not decreasing-geometric");
    for (int k = 1; k + 1 < n_nodes; ++k)
        if (std::abs(times[k + 1] / times[k] - ratio) > 1e-9 * ratio)
            throw std::runtime_error("trajectory read: samples are not decreasing-geometric");
    TimeMesh mesh(times[0] / std::sqrt(ratio), ratio, n_nodes);

    if (std::holds_alternative<VectorField>(fields[0])) {
        std::vector<VectorField> nodes;
        for (auto& f : fields) nodes.push_back(std::get<VectorField>(std::move(f)));
        return Trajectory(mesh, std::move(nodes));
    }
    std::vector<ScalarField> nodes;
    for (auto& f : fields) nodes.push_back(std::get<ScalarField>(std::move(f)));
    return Trajectory(mesh, std::move(nodes));
}

void write_trajectory_file(const std::string& path, const Trajectory& g) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_trajectory(os, g);
}

Trajectory read_trajectory_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    return read_trajectory(is);
}

}  // namespace qns
