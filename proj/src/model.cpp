#include "ngdep/model.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>

#include "ngdep/errors.hpp"
#include "ngdep/text.hpp"

namespace ngdep {

namespace {

constexpr const char* kMagic = "NGDEP-MODEL\t1";

void write_section(std::ostream& out, const char* name,
                   const std::string& bytes) {
  out << "section\t" << name << '\t' << bytes.size() << '\n';
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out << '\n';
}

std::string doubles_to_bytes(const std::vector<double>& values) {
  std::string bytes(values.size() * sizeof(double), '\0');
  if (!values.empty())
    std::memcpy(bytes.data(), values.data(), bytes.size());
  return bytes;
}

std::vector<double> bytes_to_doubles(const std::string& bytes,
                                     const std::string& what) {
  if (bytes.size() % sizeof(double) != 0)
    throw DataError(what + " section length is not a multiple of 8");
  std::vector<double> values(bytes.size() / sizeof(double));
  if (!values.empty())
    std::memcpy(values.data(), bytes.data(), bytes.size());
  return values;
}

std::string bool_str(bool b) { return b ? "1" : "0"; }

bool parse_bool(const std::string& s, const std::string& what) {
  if (s == "1") return true;
  if (s == "0") return false;
  throw DataError("bad boolean for " + what + ": '" + s + "'");
}

}  // namespace

void Model::save(std::ostream& out) const {
  out << kMagic << '\n';

  write_section(out, "meta", meta_json);

  std::ostringstream info;
  info << "order\t" << config.order << '\n';
  info << "training-k\t" << config.training_k << '\n';
  info << "iters\t" << config.iters << '\n';
  info << "loss-type\t" << config.loss_type << '\n';
  info << "baseline\t" << bool_str(groups.baseline) << '\n';
  info << "surface-affinity\t" << bool_str(groups.surface_affinity) << '\n';
  info << "surface-paraphrase\t" << bool_str(groups.surface_paraphrase)
       << '\n';
  info << "surface-second-order\t" << bool_str(groups.surface_second_order)
       << '\n';
  info << "syntactic-first-order\t" << bool_str(groups.syntactic_first_order)
       << '\n';
  info << "syntactic-second-order\t"
       << bool_str(groups.syntactic_second_order) << '\n';
  info << "syntactic-paraphrase\t" << bool_str(groups.syntactic_paraphrase)
       << '\n';
  write_section(out, "info", info.str());

  // Canonical order: features sorted bytewise, weights permuted to match.
  const int size = alphabet.size();
  std::vector<int> perm(static_cast<std::size_t>(size));
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    return alphabet.feature(a) < alphabet.feature(b);
  });
  std::string alpha_bytes;
  std::vector<double> w(static_cast<std::size_t>(size), 0.0);
  std::vector<double> aw(static_cast<std::size_t>(size), 0.0);
  for (int i = 0; i < size; ++i) {
    alpha_bytes += alphabet.feature(perm[i]);
    alpha_bytes += '\n';
    if (perm[i] < static_cast<int>(weights.size())) w[i] = weights[perm[i]];
    if (perm[i] < static_cast<int>(averaged.size())) aw[i] = averaged[perm[i]];
  }
  write_section(out, "alphabet", alpha_bytes);
  write_section(out, "weights", doubles_to_bytes(w));
  write_section(out, "avgweights", doubles_to_bytes(aw));

  std::ostringstream tag;
  tagger.write(tag);
  write_section(out, "tagger", tag.str());
  out << "end\n";
}

void Model::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open model file for writing: " + path);
  save(out);
}

Model Model::load(std::istream& in, const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line) || line != kMagic)
    throw DataError(source_name + ": not a model file (bad magic)");
  Model model;
  bool have[6] = {};
  while (std::getline(in, line)) {
    if (line == "end") break;
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 3 || cols[0] != "section")
      throw DataError(source_name + ": malformed section header '" + line +
                      "'");
    std::uint64_t len = parse_count(cols[2], "section length");
    std::string bytes(len, '\0');
    in.read(bytes.data(), static_cast<std::streamsize>(len));
    if (static_cast<std::uint64_t>(in.gcount()) != len)
      throw DataError(source_name + ": truncated section '" + cols[1] + "'");
    int nl = in.get();
    if (nl != '\n')
      throw DataError(source_name + ": missing section terminator");

    const std::string& name = cols[1];
    if (name == "meta") {
      model.meta_json = bytes;
      have[0] = true;
    } else if (name == "info") {
      std::istringstream info(bytes);
      std::string row;
      while (std::getline(info, row)) {
        if (row.empty()) continue;
        std::vector<std::string> kv = split(row, '\t');
        if (kv.size() != 2)
          throw DataError(source_name + ": malformed info row '" + row + "'");
        const std::string& k = kv[0];
        const std::string& v = kv[1];
        if (k == "order")
          model.config.order = parse_int(v, "order");
        else if (k == "training-k")
          model.config.training_k = parse_int(v, "training-k");
        else if (k == "iters")
          model.config.iters = parse_int(v, "iters");
        else if (k == "loss-type")
          model.config.loss_type = v;
        else if (k == "baseline")
          model.groups.baseline = parse_bool(v, k);
        else if (k == "surface-affinity")
          model.groups.surface_affinity = parse_bool(v, k);
        else if (k == "surface-paraphrase")
          model.groups.surface_paraphrase = parse_bool(v, k);
        else if (k == "surface-second-order")
          model.groups.surface_second_order = parse_bool(v, k);
        else if (k == "syntactic-first-order")
          model.groups.syntactic_first_order = parse_bool(v, k);
        else if (k == "syntactic-second-order")
          model.groups.syntactic_second_order = parse_bool(v, k);
        else if (k == "syntactic-paraphrase")
          model.groups.syntactic_paraphrase = parse_bool(v, k);
        else
          throw DataError(source_name + ": unknown info key '" + k + "'");
      }
      have[1] = true;
    } else if (name == "alphabet") {
      std::istringstream alpha(bytes);
      std::string feature;
      while (std::getline(alpha, feature))
        model.alphabet.lookup_or_add(feature);
      model.alphabet.freeze();
      have[2] = true;
    } else if (name == "weights") {
      model.weights = bytes_to_doubles(bytes, "weights");
      have[3] = true;
    } else if (name == "avgweights") {
      model.averaged = bytes_to_doubles(bytes, "avgweights");
      have[4] = true;
    } else if (name == "tagger") {
      std::istringstream tag(bytes);
      model.tagger = UnigramTagger::read(tag, source_name + "#tagger");
      have[5] = true;
    } else {
      throw DataError(source_name + ": unknown section '" + name + "'");
    }
  }
  for (bool h : have)
    if (!h) throw DataError(source_name + ": incomplete model file");
  if (static_cast<int>(model.weights.size()) != model.alphabet.size() ||
      static_cast<int>(model.averaged.size()) != model.alphabet.size())
    throw DataError(source_name + ": weight count does not match alphabet");
  return model;
}

Model Model::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file: " + path);
  return load(in, path);
}

}  // namespace ngdep
