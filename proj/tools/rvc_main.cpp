#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rvc/chain.hpp"
#include "rvc/codec.hpp"
#include "rvc/errors.hpp"
#include "rvc/image.hpp"
#include "rvc/ternary.hpp"

// Exit codes: 0 success, 1 I/O, 2 usage or validation, 3 integrity
// (checksum), 4 share inconsistency. Every output file is written to a
// temp name and renamed, so a failed run leaves no partial outputs.

namespace fs = std::filesystem;

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                  std::istreambuf_iterator<char>()};
  if (in.bad()) throw IoError("cannot read " + path.string());
  return bytes;
}

void write_file_atomic(const fs::path& path, std::span<const std::uint8_t> bytes) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError("cannot replace " + path.string() + ": " + ec.message());
  }
}

rvc::BitSeq parse_message(const std::vector<std::uint8_t>& bytes, const std::string& format) {
  if (format == "bits") {
    return rvc::bits_from_string(
        std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  }
  rvc::BitSeq bits;
  bits.reserve(bytes.size() * 8);
  for (std::uint8_t b : bytes)
    for (int k = 7; k >= 0; --k) bits.push_back(rvc::SecretBit((b >> k) & 1));
  return bits;
}

std::vector<std::uint8_t> render_message(const rvc::BitSeq& bits, const std::string& format) {
  if (format == "bits") {
    std::vector<std::uint8_t> out;
    out.reserve(bits.size() + 1);
    for (rvc::SecretBit b : bits) out.push_back(static_cast<std::uint8_t>('0' + b.value()));
    out.push_back('\n');
    return out;
  }
  if (bits.size() % 8 != 0) {
    std::ostringstream msg;
    msg << bits.size() << " bits cannot be written as raw bytes; use --format bits";
    throw std::invalid_argument(msg.str());
  }
  std::vector<std::uint8_t> out(bits.size() / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i].value()) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  return out;
}

rvc::RandomSource make_rng(const std::optional<std::uint64_t>& seed) {
  if (!seed) return rvc::RandomSource();
  std::cerr << "warning: --seed makes the shares reproducible; testing only\n";
  return rvc::RandomSource(*seed);
}

std::string decimal(const rvc::Rational& r) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6) << r.value();
  return out.str();
}

void print_layout(std::ostream& out, const rvc::ChainLayout& layout) {
  out << "levels: " << layout.level_count() << "\n";
  out << "lengths:";
  for (std::size_t n : layout.lengths()) out << " " << n;
  out << "\n";
  bool shaped = true;
  for (std::size_t k = 1; k <= layout.level_count(); ++k)
    shaped = shaped && layout.shape(k).has_value();
  if (shaped && layout.level_count() > 0) {
    out << "shapes:";
    for (std::size_t k = 1; k <= layout.level_count(); ++k)
      out << " " << layout.shape(k)->width << "x" << layout.shape(k)->height;
    out << "\n";
  }
}

void print_efficiency(std::ostream& out, const rvc::ChainLayout& layout) {
  const rvc::EfficiencyMetrics m = rvc::efficiency_report(layout);
  out << "ternary_efficiency: " << m.ternary_efficiency.str() << " ("
      << decimal(m.ternary_efficiency) << ")\n";
  out << "binary_efficiency: " << m.binary_efficiency.str() << " ("
      << decimal(m.binary_efficiency) << ")\n";
  out << "raw_subpixel_expansion: " << m.raw_subpixel_expansion.str() << " ("
      << decimal(m.raw_subpixel_expansion) << ")\n";
  out << "improvement_ratio: " << m.improvement_ratio.str() << " ("
      << decimal(m.improvement_ratio) << ")\n";
}

// Reads a share either as a container or as a rendered PBM. A PBM
// carries only pixels, so its index and layout come from the .rvcs
// sidecar written next to it at split time; the raster stays the
// authority on symbol content.
rvc::ShareContainer load_share(const fs::path& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), "RVC1", 4) == 0)
    return rvc::parse_share(bytes);

  const rvc::BinaryImage raster = rvc::read_pbm(bytes);
  rvc::SymbolSeq symbols = rvc::symbols_from_share_image(raster);
  fs::path sidecar = path;
  sidecar.replace_extension(".rvcs");
  rvc::ShareContainer container = rvc::parse_share(read_file(sidecar));
  if (symbols.size() != container.layout.top_length()) {
    std::ostringstream msg;
    msg << path.string() << " holds " << symbols.size() << " blocks but its sidecar expects "
        << container.layout.top_length();
    throw rvc::Error(rvc::ErrorCode::ShapeMismatch, msg.str());
  }
  container.symbols = std::move(symbols);
  return container;
}

struct SplitOptions {
  std::string input;
  std::vector<std::string> hidden;  // largest hidden level first
  std::string format = "bits";
  std::string out_dir;
  std::optional<std::uint64_t> seed;
};

int cmd_split(const SplitOptions& opt) {
  rvc::MessageChain chain;
  for (auto it = opt.hidden.rbegin(); it != opt.hidden.rend(); ++it)
    chain.levels.push_back(parse_message(read_file(*it), opt.format));
  chain.levels.push_back(parse_message(read_file(opt.input), opt.format));

  rvc::RandomSource rng = make_rng(opt.seed);
  const rvc::ShareSet shares = rvc::encode_chain(chain, rng);

  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
  if (ec) throw IoError("cannot create " + opt.out_dir + ": " + ec.message());

  for (int j = 1; j <= 3; ++j) {
    const rvc::ShareContainer container{rvc::ShareIndex(j), rvc::PayloadKind::Text,
                                        shares.layout, shares.share(rvc::ShareIndex(j))};
    const fs::path out = fs::path(opt.out_dir) / ("share_" + std::to_string(j) + ".rvcs");
    write_file_atomic(out, rvc::serialize_share(container));
    std::cout << "share_" << j << ": " << out.string() << "\n";
  }
  print_layout(std::cout, shares.layout);
  print_efficiency(std::cout, shares.layout);
  return 0;
}

struct CombineOptions {
  std::string share_a;
  std::string share_b;
  std::optional<std::size_t> level;
  std::string out;
  std::string format = "bits";
};

int cmd_combine(const CombineOptions& opt) {
  const rvc::ShareContainer a = rvc::parse_share(read_file(opt.share_a));
  const rvc::ShareContainer b = rvc::parse_share(read_file(opt.share_b));
  if (!(a.layout == b.layout))
    throw rvc::Error(rvc::ErrorCode::LayoutMismatch, "shares disagree on the chain layout");
  const std::size_t level = opt.level.value_or(a.layout.level_count());
  const rvc::BitSeq bits = rvc::decode_level(a.symbols, a.share_index, b.symbols,
                                             b.share_index, a.layout, level);
  write_file_atomic(opt.out, render_message(bits, opt.format));
  std::cout << "level: " << level << "\n"
            << "bits: " << bits.size() << "\n"
            << "out: " << opt.out << "\n";
  return 0;
}

struct ImgSplitOptions {
  std::string image;
  std::vector<std::string> hidden;  // largest hidden level first
  std::string out_dir;
  std::optional<std::uint64_t> seed;
};

int cmd_img_split(const ImgSplitOptions& opt) {
  std::vector<rvc::BinaryImage> images;
  for (auto it = opt.hidden.rbegin(); it != opt.hidden.rend(); ++it)
    images.push_back(rvc::read_pbm(read_file(*it)));
  images.push_back(rvc::read_pbm(read_file(opt.image)));

  rvc::RandomSource rng = make_rng(opt.seed);
  const rvc::ImageShareSet set = rvc::encode_image_chain(images, rng);

  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
  if (ec) throw IoError("cannot create " + opt.out_dir + ": " + ec.message());

  for (int j = 1; j <= 3; ++j) {
    const fs::path pbm = fs::path(opt.out_dir) / ("share_" + std::to_string(j) + ".pbm");
    const fs::path rvcs = fs::path(opt.out_dir) / ("share_" + std::to_string(j) + ".rvcs");
    write_file_atomic(pbm, rvc::write_pbm(set.images[j - 1].image, rvc::PbmVariant::Raw));
    const rvc::ShareContainer container{rvc::ShareIndex(j), rvc::PayloadKind::Image,
                                        set.shares.layout,
                                        set.shares.share(rvc::ShareIndex(j))};
    write_file_atomic(rvcs, rvc::serialize_share(container));
    std::cout << "share_" << j << ": " << pbm.string() << "\n";
  }
  print_layout(std::cout, set.shares.layout);
  print_efficiency(std::cout, set.shares.layout);
  return 0;
}

struct StackOptions {
  std::string share_a;
  std::string share_b;
  std::string out;
};

int cmd_stack(const StackOptions& opt) {
  const rvc::BinaryImage a = rvc::read_pbm(read_file(opt.share_a));
  const rvc::BinaryImage b = rvc::read_pbm(read_file(opt.share_b));
  write_file_atomic(opt.out, rvc::write_pbm(rvc::stack_images(a, b), rvc::PbmVariant::Raw));
  std::cout << "out: " << opt.out << "\n";
  return 0;
}

struct ImgCombineOptions {
  std::string share_a;
  std::string share_b;
  std::optional<std::size_t> level;
  std::string out;
};

int cmd_img_combine(const ImgCombineOptions& opt) {
  const rvc::ShareContainer a = load_share(opt.share_a);
  const rvc::ShareContainer b = load_share(opt.share_b);
  if (!(a.layout == b.layout))
    throw rvc::Error(rvc::ErrorCode::LayoutMismatch, "shares disagree on the chain layout");
  const std::size_t level = opt.level.value_or(a.layout.level_count());
  const rvc::BitSeq bits = rvc::decode_level(a.symbols, a.share_index, b.symbols,
                                             b.share_index, a.layout, level);
  const std::optional<rvc::LevelShape>& shape = a.layout.shape(level);
  if (!shape) {
    std::ostringstream msg;
    msg << "level " << level << " has no pixel shape; use combine for text shares";
    throw rvc::Error(rvc::ErrorCode::BadImageShape, msg.str());
  }
  const rvc::BinaryImage img = rvc::bits_to_image(bits, shape->width, shape->height);
  write_file_atomic(opt.out, rvc::write_pbm(img, rvc::PbmVariant::Raw));
  std::cout << "level: " << level << "\n"
            << "size: " << img.width() << "x" << img.height() << "\n"
            << "out: " << opt.out << "\n";
  return 0;
}

struct VerifyOptions {
  std::string share_1;
  std::string share_2;
  std::string share_3;
};

int cmd_verify(const VerifyOptions& opt) {
  const std::array<std::string, 3> paths{opt.share_1, opt.share_2, opt.share_3};
  std::array<std::optional<rvc::ShareContainer>, 3> by_index;
  for (const std::string& p : paths) {
    rvc::ShareContainer c = rvc::parse_share(read_file(p));
    const int j = c.share_index.value();
    if (by_index[j - 1]) {
      std::ostringstream msg;
      msg << "two of the containers are share " << j;
      throw rvc::Error(rvc::ErrorCode::DuplicateShareIndex, msg.str());
    }
    by_index[j - 1] = std::move(c);
  }
  const rvc::ShareContainer& s1 = *by_index[0];
  const rvc::ShareContainer& s2 = *by_index[1];
  const rvc::ShareContainer& s3 = *by_index[2];
  if (!(s1.layout == s2.layout) || !(s2.layout == s3.layout))
    throw rvc::Error(rvc::ErrorCode::LayoutMismatch, "shares disagree on the chain layout");

  try {
    const std::vector<rvc::BitSeq> levels =
        rvc::verify_shares(s1.symbols, s2.symbols, s3.symbols, s1.layout);
    std::cout << "consistent: yes\n";
    print_layout(std::cout, s1.layout);
    for (std::size_t k = 0; k < levels.size(); ++k)
      std::cout << "level " << (k + 1) << ": " << levels[k].size() << " bits\n";
    return 0;
  } catch (const rvc::Error& e) {
    if (e.code() != rvc::ErrorCode::InconsistentTriple) throw;
    std::cout << "consistent: no\n";
    if (e.has_position()) std::cout << "first_bad_position: " << e.position() << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}

struct StatsOptions {
  std::string share;
};

int cmd_stats(const StatsOptions& opt) {
  const rvc::ShareContainer c = rvc::parse_share(read_file(opt.share));
  std::cout << "share_index: " << c.share_index.value() << "\n";
  std::cout << "kind: " << (c.kind == rvc::PayloadKind::Image ? "image" : "text") << "\n";
  print_layout(std::cout, c.layout);
  std::cout << "symbols: " << c.symbols.size() << "\n";
  const rvc::PrefixBitstream coded = rvc::prefix_encode(c.symbols);
  std::cout << "payload_bits: " << coded.bit_count << "\n";
  print_efficiency(std::cout, c.layout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-of-3 threshold secret sharing with recursive hiding"};
  app.require_subcommand(1);

  SplitOptions split_opt;
  std::uint64_t split_seed = 0;
  CLI::App* split = app.add_subcommand("split", "split a message into three shares");
  split->add_option("--input", split_opt.input, "cover message file")->required();
  split->add_option("--hidden", split_opt.hidden,
                    "hidden message file, repeatable, largest level first");
  split->add_option("--format", split_opt.format, "bits (ASCII 0/1) or raw bytes")
      ->check(CLI::IsMember({"bits", "raw"}));
  split->add_option("--out-dir", split_opt.out_dir, "output directory")->required();
  CLI::Option* split_seed_opt =
      split->add_option("--seed", split_seed, "deterministic generator seed (testing only)");

  CombineOptions combine_opt;
  std::size_t combine_level = 0;
  CLI::App* combine = app.add_subcommand("combine", "recover a message from two shares");
  combine->add_option("share_a", combine_opt.share_a, ".rvcs container")->required();
  combine->add_option("share_b", combine_opt.share_b, ".rvcs container")->required();
  CLI::Option* combine_level_opt =
      combine->add_option("--level", combine_level, "chain level to recover, default top");
  combine->add_option("--out", combine_opt.out, "output file")->required();
  combine->add_option("--format", combine_opt.format, "bits (ASCII 0/1) or raw bytes")
      ->check(CLI::IsMember({"bits", "raw"}));

  ImgSplitOptions img_split_opt;
  std::uint64_t img_split_seed = 0;
  CLI::App* img_split = app.add_subcommand("img-split", "split a PBM image into three shares");
  img_split->add_option("--image", img_split_opt.image, "cover image, PBM")->required();
  img_split->add_option("--hidden", img_split_opt.hidden,
                        "hidden image, repeatable, largest level first");
  img_split->add_option("--out-dir", img_split_opt.out_dir, "output directory")->required();
  CLI::Option* img_split_seed_opt = img_split->add_option(
      "--seed", img_split_seed, "deterministic generator seed (testing only)");

  StackOptions stack_opt;
  CLI::App* stack = app.add_subcommand("stack", "overlay two share images");
  stack->add_option("share_a", stack_opt.share_a, "share PBM")->required();
  stack->add_option("share_b", stack_opt.share_b, "share PBM")->required();
  stack->add_option("--out", stack_opt.out, "output PBM")->required();

  ImgCombineOptions img_combine_opt;
  std::size_t img_combine_level = 0;
  CLI::App* img_combine =
      app.add_subcommand("img-combine", "recover a hidden image from two shares");
  img_combine->add_option("share_a", img_combine_opt.share_a, ".rvcs container or share PBM")
      ->required();
  img_combine->add_option("share_b", img_combine_opt.share_b, ".rvcs container or share PBM")
      ->required();
  CLI::Option* img_combine_level_opt = img_combine->add_option(
      "--level", img_combine_level, "chain level to recover, default top");
  img_combine->add_option("--out", img_combine_opt.out, "output PBM")->required();

  VerifyOptions verify_opt;
  CLI::App* verify = app.add_subcommand("verify", "audit three shares for consistency");
  verify->add_option("share_1", verify_opt.share_1, ".rvcs container")->required();
  verify->add_option("share_2", verify_opt.share_2, ".rvcs container")->required();
  verify->add_option("share_3", verify_opt.share_3, ".rvcs container")->required();

  StatsOptions stats_opt;
  CLI::App* stats = app.add_subcommand("stats", "layout and efficiency of one share");
  stats->add_option("share", stats_opt.share, ".rvcs container")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (split->parsed()) {
      if (split_seed_opt->count()) split_opt.seed = split_seed;
      return cmd_split(split_opt);
    }
    if (combine->parsed()) {
      if (combine_level_opt->count()) combine_opt.level = combine_level;
      return cmd_combine(combine_opt);
    }
    if (img_split->parsed()) {
      if (img_split_seed_opt->count()) img_split_opt.seed = img_split_seed;
      return cmd_img_split(img_split_opt);
    }
    if (stack->parsed()) return cmd_stack(stack_opt);
    if (img_combine->parsed()) {
      if (img_combine_level_opt->count()) img_combine_opt.level = img_combine_level;
      return cmd_img_combine(img_combine_opt);
    }
    if (verify->parsed()) return cmd_verify(verify_opt);
    if (stats->parsed()) return cmd_stats(stats_opt);
    std::cerr << app.help();
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const rvc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case rvc::ErrorCode::ChecksumMismatch:
        return 3;
      case rvc::ErrorCode::InconsistentTriple:
        return 4;
      default:
        return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
