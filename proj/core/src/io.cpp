// io.cpp — CSV / text emission

#include "coolsim/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace coolsim {

std::string format_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<const std::vector<double>*>& columns) {
    if (header.size() != columns.size())
        throw std::invalid_argument("write_csv: header/column mismatch");
    std::string body;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c) body += ',';
        body += header[c];
    }
    body += '\n';
    const std::size_t rows = columns.empty() ? 0 : columns.front()->size();
    for (const auto* col : columns)
        if (col->size() != rows) throw std::invalid_argument("write_csv: ragged columns");
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) body += ',';
            body += format_sci((*columns[c])[r]);
        }
        body += '\n';
    }
    write_text_file(path, body);
}

void write_meanfield_csv(const std::string& path, const MeanFieldTrajectory& traj,
                         std::size_t stride) {
    if (stride == 0) stride = 1;
    std::vector<double> t, ar, ai, br, bi, gabs, deff;
    for (std::size_t j = 0; j < traj.grid.size(); j += stride) {
        t.push_back(traj.grid.time(j));
        ar.push_back(traj.alpha[j].real());
        ai.push_back(traj.alpha[j].imag());
        br.push_back(traj.beta[j].real());
        bi.push_back(traj.beta[j].imag());
        gabs.push_back(std::abs(traj.G[j]));
        deff.push_back(traj.delta_eff[j]);
    }
    write_csv(path, {"t", "re_alpha", "im_alpha", "re_beta", "im_beta", "abs_G", "delta_c_eff"},
              {&t, &ar, &ai, &br, &bi, &gabs, &deff});
}

void write_nb_csv(const std::string& path, const CoolingReport& report) {
    const PhononSeries& nb = report.Nb;
    std::vector<std::string> header{"t", "N_b", "nu"};
    std::vector<const std::vector<double>*> cols{&nb.times, &nb.Nb, &report.nu};
    if (nb.has_components) {
        header.insert(header.end(), {"Nb_initial", "Nb_vacuum", "Nb_f1", "Nb_f2",
                                     "Nb_fth", "Nb_fini"});
        cols.insert(cols.end(), {&nb.comp_initial, &nb.comp_vacuum, &nb.comp_f1,
                                 &nb.comp_f2, &nb.comp_fth, &nb.comp_fini});
    }
    write_csv(path, header, cols);
}

void write_scan_csv(const std::string& path, const ScanTable& table) {
    std::vector<double> c1r, c1i, c2r, c2i, tmin, nbmin, nbsteady;
    for (const auto& row : table.rows) {
        c1r.push_back(row.c1.real());
        c1i.push_back(row.c1.imag());
        c2r.push_back(row.c2.real());
        c2i.push_back(row.c2.imag());
        tmin.push_back(row.t_min);
        nbmin.push_back(row.nb_min);
        nbsteady.push_back(row.nb_steady);
    }
    write_csv(path, {"re_c1", "im_c1", "re_c2", "im_c2", "t_min", "Nb_min", "Nb_steady"},
              {&c1r, &c1i, &c2r, &c2i, &tmin, &nbmin, &nbsteady});
}

}  // namespace coolsim
