#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <utility>

#include <CLI11.hpp>

#include "repomine/basemaps.hpp"
#include "repomine/error.hpp"
#include "repomine/forkcluster.hpp"
#include "repomine/identity.hpp"
#include "repomine/langclass.hpp"
#include "repomine/manifest.hpp"
#include "repomine/metadata.hpp"
#include "repomine/object_stream.hpp"
#include "repomine/query.hpp"
#include "repomine/repository.hpp"
#include "repomine/sampler.hpp"
#include "repomine/shards.hpp"

namespace repomine::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string out_dir;
  unsigned threads = 1;
  std::string version = "A";
  std::string langs_file;

  // inputs
  std::vector<std::string> streams;
  std::vector<std::string> repos;  // PROJECT=PATH
  std::string store_file;
  std::string maps_dir;
  std::string docs_file;
  std::string stars_file;

  std::size_t shards = 16;
  double tau = 0.5;
  std::size_t k_max = 100;
  double theta = 0.75;
  std::string weights = "0.4,0.2,0.2,0.2";
  std::string query;
  std::size_t n = 1;
  std::uint64_t seed = 0;
  std::string deep_loc;
  bool authors = false;
  std::string project;
};

// Digest of a regular file, or of every file in a directory except MANIFEST.
std::string input_digest(const fs::path& p) {
  if (!fs::is_directory(p)) return file_digest(p);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(p)) {
    if (e.is_regular_file() && e.path().filename() != Manifest::kFileName) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::string combined;
  for (const auto& f : files) combined += f.filename().string() + '\t' + file_digest(f) + '\n';
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(combined)));
  return buf;
}

class Recorder {
 public:
  Recorder(fs::path dir, std::string subcommand)
      : dir_(std::move(dir)), sub_(std::move(subcommand)), manifest_(Manifest::load(dir_)) {}

  Recorder& param(const std::string& key, const std::string& value) {
    manifest_.set(sub_ + "." + key, value);
    return *this;
  }

  Recorder& input(const std::string& role, const fs::path& p) {
    manifest_.set(sub_ + ".input." + role, p.filename().string() + " fnv1a64:" + input_digest(p));
    return *this;
  }

  void save(char version) {
    manifest_.set("version", std::string(1, version));
    manifest_.save(dir_);
  }

 private:
  fs::path dir_;
  std::string sub_;
  Manifest manifest_;
};

std::string fmt_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

fs::path ensure_out_dir(const Options& o) {
  fs::path dir = o.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw Error(Errc::io, "cannot create output directory " + dir.string());
  return dir;
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string(flag) + " is required");
}

ExtensionTable load_table(const Options& o) {
  if (o.langs_file.empty()) return ExtensionTable::defaults();
  return ExtensionTable::with_overrides_file(o.langs_file);
}

ObjectStore load_store(const Options& o) {
  require(o.store_file, "--store");
  return read_object_stream_file(o.store_file);
}

BaseMaps load_maps(const Options& o, const ObjectStore& store) {
  if (o.maps_dir.empty()) return build_basemaps(store, o.threads);
  return read_all_shards(o.maps_dir);
}

char version_letter(const Options& o) {
  if (o.version.size() != 1 || o.version[0] < 'A' || o.version[0] > 'Z') {
    throw UsageError("--version must be a single uppercase letter");
  }
  return o.version[0];
}

IdentityWeights parse_weights(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--weights expects four comma-separated numbers");
    }
  }
  if (parts.size() != 4) throw UsageError("--weights expects four comma-separated numbers");
  IdentityWeights w{parts[0], parts[1], parts[2], parts[3]};
  try {
    w.check();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return w;
}

DeepLocFilter parse_deep_loc(const std::string& text) {
  auto first = text.find(',');
  auto second = first == std::string::npos ? first : text.find(',', first + 1);
  if (second == std::string::npos) throw UsageError("--deep-loc expects LANGUAGE,MIN_LINES,MIN_FILES");
  auto lang = language_from_name(text.substr(0, first));
  if (!lang) throw UsageError("--deep-loc: unknown language '" + text.substr(0, first) + "'");
  DeepLocFilter f;
  f.language = *lang;
  try {
    f.min_lines = std::stoull(text.substr(first + 1, second - first - 1));
    f.min_files = std::stoull(text.substr(second + 1));
  } catch (const std::exception&) {
    throw UsageError("--deep-loc thresholds must be positive integers");
  }
  if (f.min_lines < 1 || f.min_files < 1) throw UsageError("--deep-loc thresholds must be >= 1");
  return f;
}

int cmd_ingest(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.streams.empty() && o.repos.empty()) throw UsageError("ingest needs --stream or --repo");
  StoreBuilder builder;
  for (const auto& s : o.streams) builder.merge(read_object_stream_file(s));

  std::vector<RepositorySource> sources;
  for (const auto& r : o.repos) {
    auto eq = r.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == r.size()) {
      throw UsageError("--repo expects PROJECT=PATH, got '" + r + "'");
    }
    sources.push_back({r.substr(eq + 1), r.substr(0, eq)});
  }
  std::size_t gitlinks = 0;
  if (!sources.empty()) builder.merge(scan_repositories(sources, o.threads, &gitlinks));
  if (gitlinks) err << "warning: ignored " << gitlinks << " submodule (gitlink) tree entries\n";
  ObjectStore store = std::move(builder).build();

  fs::path dir = ensure_out_dir(o);
  fs::path file = dir / "objects.stream";
  write_object_stream_file(file.string(), store);

  Recorder rec(dir, "ingest");
  for (std::size_t i = 0; i < o.streams.size(); ++i) rec.input("stream" + std::to_string(i), o.streams[i]);
  for (const auto& s : sources) rec.param("repo." + s.project_id, s.root.filename().string());
  rec.save(version_letter(o));

  out << "ingested " << store.projects().size() << " projects, " << store.commits().size()
      << " commits, " << store.trees().size() << " trees, " << store.blobs().size() << " blobs -> "
      << file.string() << "\n";
  return kOk;
}

int cmd_build_maps(const Options& o, std::ostream& out, std::ostream&) {
  if (!is_valid_shard_count(o.shards)) throw UsageError("--shards must be a power of two in [1, 256]");
  char v = version_letter(o);
  ObjectStore store = load_store(o);
  BaseMaps maps = build_basemaps(store, o.threads);
  fs::path dir = ensure_out_dir(o);
  auto sets = write_shards(maps, dir, o.shards, v);
  Recorder(dir, "build-maps").input("store", o.store_file).save(v);
  out << "wrote " << sets.size() << " maps x " << o.shards << " shards -> " << dir.string() << "\n";
  return kOk;
}

int cmd_aggregate(const Options& o, std::ostream& out, std::ostream&) {
  DatasetVersion v(version_letter(o));
  ObjectStore store = load_store(o);
  BaseMaps maps = load_maps(o, store);
  ExtensionTable table = load_table(o);
  auto projects = aggregate_projects(maps, store, table, o.threads);
  auto authors = aggregate_authors(maps, store, table, o.threads);
  fs::path dir = ensure_out_dir(o);
  auto pfile = export_documents(projects, v, dir);
  auto afile = export_documents(authors, v, dir);

  Recorder rec(dir, "aggregate");
  rec.input("store", o.store_file);
  if (!o.maps_dir.empty()) rec.input("maps", o.maps_dir);
  if (!o.langs_file.empty()) rec.input("langs", o.langs_file);
  rec.save(v.letter());
  out << "aggregated " << projects.size() << " projects -> " << pfile.string() << ", "
      << authors.size() << " authors -> " << afile.string() << "\n";
  return kOk;
}

int cmd_import_stars(const Options& o, std::ostream& out, std::ostream& err) {
  require(o.docs_file, "--docs");
  require(o.stars_file, "--stars");
  DatasetVersion v(version_letter(o));
  auto docs = read_proj_documents(o.docs_file);
  std::ifstream csv(o.stars_file);
  if (!csv) throw Error(Errc::io, "cannot open " + o.stars_file);
  auto report = import_stars(csv, docs);
  if (report.unmatched) err << "warning: " << report.unmatched << " stars rows name unknown projects\n";
  fs::path dir = ensure_out_dir(o);
  auto file = export_documents(std::move(docs), v, dir);
  Recorder(dir, "import-stars").input("docs", o.docs_file).input("stars", o.stars_file).save(v.letter());
  out << "applied stars to " << report.applied << " projects (" << report.unmatched
      << " unmatched rows) -> " << file.string() << "\n";
  return kOk;
}

int cmd_fork_clusters(const Options& o, std::ostream& out, std::ostream&) {
  if (!(o.tau > 0.0 && o.tau <= 1.0)) throw UsageError("--tau must be in (0, 1]");
  if (o.k_max < 2) throw UsageError("--k-max must be at least 2");
  DatasetVersion v(version_letter(o));
  ObjectStore store = load_store(o);
  BaseMaps maps = load_maps(o, store);
  auto clusters = detect_forks(maps, store, ForkParams{o.tau, o.k_max});

  fs::path dir = ensure_out_dir(o);
  fs::path file = dir / (std::string("fork_clusters.") + v.letter() + ".txt");
  write_fork_clusters(file, clusters);

  Recorder rec(dir, "fork-clusters");
  rec.param("tau", fmt_double(o.tau)).param("k_max", std::to_string(o.k_max)).input("store", o.store_file);
  if (!o.maps_dir.empty()) rec.input("maps", o.maps_dir);
  if (!o.docs_file.empty()) {
    rec.input("docs", o.docs_file);
    auto docs = read_proj_documents(o.docs_file);
    apply_forks(clusters, docs);
    export_documents(std::move(docs), v, dir);
  }
  rec.save(v.letter());
  out << "found " << clusters.size() << " fork clusters -> " << file.string() << "\n";
  return kOk;
}

int cmd_ident_merge(const Options& o, std::ostream& out, std::ostream&) {
  if (!(o.theta > 0.0 && o.theta <= 1.0)) throw UsageError("--theta must be in (0, 1]");
  IdentityWeights w = parse_weights(o.weights);
  DatasetVersion v(version_letter(o));
  ObjectStore store = load_store(o);
  BaseMaps maps = load_maps(o, store);
  std::vector<AuthorId> authors;
  for (const auto& [raw, _] : maps.map(MapName::a2c)) authors.emplace_back(raw);
  auto partition = merge(authors, o.theta, maps, store, w, o.threads);

  fs::path dir = ensure_out_dir(o);
  fs::path file = dir / (std::string("identities.") + v.letter() + ".txt");
  write_identities(file, partition);
  Recorder rec(dir, "ident-merge");
  rec.param("theta", fmt_double(o.theta)).param("weights", o.weights).input("store", o.store_file);
  if (!o.maps_dir.empty()) rec.input("maps", o.maps_dir);
  rec.save(v.letter());
  out << "merged " << authors.size() << " author ids into " << partition.groups.size()
      << " identities -> " << file.string() << "\n";
  return kOk;
}

int cmd_sample(const Options& o, std::ostream& out, std::ostream&) {
  require(o.docs_file, "--docs");
  require(o.query, "--query");
  if (o.n < 1) throw UsageError("--n must be at least 1");
  DatasetVersion v(version_letter(o));
  Predicate predicate = parse_query(o.query);
  SampleSpec spec{o.n, o.seed};

  std::optional<DeepLocFilter> deep;
  if (!o.deep_loc.empty()) {
    if (o.authors) throw UsageError("--deep-loc applies to project documents only");
    deep = parse_deep_loc(o.deep_loc);
    require(o.store_file, "--store");
  }

  QueryResult result;
  if (o.authors) {
    result = run_author_query(read_auth_documents(o.docs_file), predicate, spec);
  } else {
    auto docs = read_proj_documents(o.docs_file);
    std::optional<ObjectStore> store;
    std::optional<BaseMaps> maps;
    if (deep) {
      store = load_store(o);
      maps = load_maps(o, *store);
    }
    result = run_project_query(docs, predicate, spec, deep, maps ? &*maps : nullptr,
                               store ? &*store : nullptr, load_table(o));
  }

  fs::path dir = ensure_out_dir(o);
  fs::path file = dir / (std::string("sample.") + v.letter() + ".json");
  {
    std::ofstream f(file, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(Errc::io, "cannot write " + file.string());
    f << result_document(result, predicate, spec) << '\n';
  }
  Recorder rec(dir, "sample");
  rec.param("query", to_string(predicate)).param("n", std::to_string(o.n));
  rec.param("seed", std::to_string(o.seed)).input("docs", o.docs_file);
  if (!o.deep_loc.empty()) {
    rec.param("deep_loc", o.deep_loc).input("store", o.store_file);
    if (!o.maps_dir.empty()) rec.input("maps", o.maps_dir);
  }
  rec.save(v.letter());

  out << "matched " << result.matched.size() << ", sampled " << result.sampled.size()
      << (result.shortfall ? " (shortfall)" : "") << " -> " << file.string() << "\n";
  return result.shortfall ? kShortfall : kOk;
}

int cmd_lang_trend(const Options& o, std::ostream& out, std::ostream&) {
  DatasetVersion v(version_letter(o));
  ObjectStore store = load_store(o);
  BaseMaps maps = load_maps(o, store);
  auto rows = lang_trend(maps, store, load_table(o));
  fs::path dir = ensure_out_dir(o);
  fs::path file = dir / (std::string("lang_trend.") + v.letter() + ".csv");
  {
    std::ofstream f(file, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(Errc::io, "cannot write " + file.string());
    write_lang_trend_csv(f, rows);
  }
  Recorder rec(dir, "lang-trend");
  rec.input("store", o.store_file);
  if (!o.maps_dir.empty()) rec.input("maps", o.maps_dir);
  rec.save(v.letter());
  out << "wrote " << rows.size() << " trend rows -> " << file.string() << "\n";
  return kOk;
}

int cmd_file_changes(const Options& o, std::ostream& out, std::ostream&) {
  require(o.project, "--project");
  DatasetVersion v(version_letter(o));
  BaseMaps maps;
  if (!o.maps_dir.empty()) {
    maps = read_all_shards(o.maps_dir);
  } else {
    maps = build_basemaps(load_store(o), o.threads);
  }
  auto counts = file_change_counts(o.project, maps);
  fs::path dir = ensure_out_dir(o);
  fs::path file = dir / (std::string("file_changes.") + v.letter() + ".tsv");
  {
    std::ofstream f(file, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(Errc::io, "cannot write " + file.string());
    for (const auto& [path, n] : counts) f << path << '\t' << n << '\n';
  }
  Recorder rec(dir, "file-changes");
  rec.param("project", o.project);
  if (!o.maps_dir.empty()) rec.input("maps", o.maps_dir);
  if (!o.store_file.empty()) rec.input("store", o.store_file);
  rec.save(v.letter());
  out << "project " << o.project << ": " << counts.size() << " paths -> " << file.string() << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  if (const char* env = std::getenv("REPOMINE_OUT")) o.out_dir = env;
  if (o.out_dir.empty()) o.out_dir = ".";

  CLI::App app{"Repository-mining pipeline: ingest git objects, build key-value base maps, "
               "aggregate metadata and sample projects.",
               "repomine"};
  app.require_subcommand(1, 1);

  auto common = [&o](CLI::App* sub) {
    sub->add_option("--out", o.out_dir, "Output directory (default: $REPOMINE_OUT or .)");
    sub->add_option("--version", o.version, "Dataset version letter A-Z")->capture_default_str();
    sub->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  };
  auto store_opts = [&o](CLI::App* sub, bool with_maps) {
    sub->add_option("--store", o.store_file, "Object stream file");
    if (with_maps) sub->add_option("--maps", o.maps_dir, "Shard directory (default: rebuild from --store)");
  };
  auto langs_opt = [&o](CLI::App* sub) {
    sub->add_option("--langs", o.langs_file, "Extension override file (extension<TAB>Language)");
  };

  auto* ingest = app.add_subcommand("ingest", "Load object streams and/or loose-object repositories");
  common(ingest);
  ingest->add_option("--stream", o.streams, "Object stream file (repeatable)");
  ingest->add_option("--repo", o.repos, "PROJECT=PATH of a git repository (repeatable)");

  auto* build = app.add_subcommand("build-maps", "Build and shard the base maps");
  common(build);
  store_opts(build, false);
  build->add_option("--shards", o.shards, "Shards per map (power of two, 1-256)")->capture_default_str();

  auto* aggregate = app.add_subcommand("aggregate", "Export project and author metadata documents");
  common(aggregate);
  store_opts(aggregate, true);
  langs_opt(aggregate);

  auto* stars = app.add_subcommand("import-stars", "Attach star counts to project documents");
  common(stars);
  stars->add_option("--docs", o.docs_file, "proj_metadata JSONL file");
  stars->add_option("--stars", o.stars_file, "CSV of project_id,stars");

  auto* forks = app.add_subcommand("fork-clusters", "Cluster projects sharing commit history");
  common(forks);
  store_opts(forks, true);
  forks->add_option("--tau", o.tau, "Minimum overlap coefficient")->capture_default_str();
  forks->add_option("--k-max", o.k_max, "Ignore commits shared by more projects")->capture_default_str();
  forks->add_option("--docs", o.docs_file, "proj_metadata JSONL to update with fork_of");

  auto* ident = app.add_subcommand("ident-merge", "Merge probable author aliases");
  common(ident);
  store_opts(ident, true);
  ident->add_option("--theta", o.theta, "Similarity threshold")->capture_default_str();
  ident->add_option("--weights", o.weights, "name,email_local,hours,files")->capture_default_str();

  auto* sample_cmd = app.add_subcommand("sample", "Query metadata documents and draw a seeded sample");
  common(sample_cmd);
  store_opts(sample_cmd, true);
  langs_opt(sample_cmd);
  sample_cmd->add_option("--docs", o.docs_file, "Metadata JSONL file");
  sample_cmd->add_option("--query", o.query, "e.g. \"lang.Python>=20 AND n_authors>=5\"");
  sample_cmd->add_option("--n", o.n, "Sample size")->capture_default_str();
  sample_cmd->add_option("--seed", o.seed, "Shuffle seed")->capture_default_str();
  sample_cmd->add_option("--deep-loc", o.deep_loc, "LANGUAGE,MIN_LINES,MIN_FILES");
  sample_cmd->add_flag("--authors", o.authors, "--docs holds auth_metadata documents");

  auto* trend = app.add_subcommand("lang-trend", "Commits per year and language (CSV)");
  common(trend);
  store_opts(trend, true);
  langs_opt(trend);

  auto* changes = app.add_subcommand("file-changes", "Distinct blobs per path for one project");
  common(changes);
  store_opts(changes, true);
  changes->add_option("--project", o.project, "Project id");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "usage error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (ingest->parsed()) return cmd_ingest(o, out, err);
    if (build->parsed()) return cmd_build_maps(o, out, err);
    if (aggregate->parsed()) return cmd_aggregate(o, out, err);
    if (stars->parsed()) return cmd_import_stars(o, out, err);
    if (forks->parsed()) return cmd_fork_clusters(o, out, err);
    if (ident->parsed()) return cmd_ident_merge(o, out, err);
    if (sample_cmd->parsed()) return cmd_sample(o, out, err);
    if (trend->parsed()) return cmd_lang_trend(o, out, err);
    if (changes->parsed()) return cmd_file_changes(o, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsage;
}

}  // namespace repomine::cli
