#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "compmotif/binary_store.hpp"
#include "compmotif/error.hpp"
#include "helpers.hpp"

using namespace compmotif;
using namespace testutil;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir()
    {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("compmotif-store-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path & p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

void dump(const fs::path & p, const std::string & bytes)
{
    std::ofstream out(p, std::ios::binary);
    out << bytes;
}

}  // namespace

TEST_CASE("store roundtrip: triangle and directed graph")
{
    TempDir dir;
    write_binary_store(triangle(), dir.path / "t.bin");
    CHECK(open_binary_store(dir.path / "t.bin") == triangle());

    Graph d = make_graph(true, 4, {{0, 1}, {1, 2}, {2, 0}, {3, 0}});
    write_binary_store(d, dir.path / "d.bin");
    Graph back = open_binary_store(dir.path / "d.bin");
    CHECK(back == d);
    CHECK(back.directed());
    CHECK(back.in_degree(0) == 2);
}

TEST_CASE("store header layout")
{
    TempDir dir;
    write_binary_store(triangle(), dir.path / "t.bin");
    std::string bytes = slurp(dir.path / "t.bin");
    CHECK(bytes.substr(0, 8) == std::string("CMGRAPH\0", 8));
    CHECK(bytes[8] == 1);  // version
    CHECK(bytes[12] == 0);  // undirected
    CHECK(bytes[16] == 3);  // n
    CHECK(bytes[24] == 3);  // m
    CHECK(bytes.size() == 32 + 8 * 4 + 8 * 6 + 8);
}

TEST_CASE("corrupt stores are rejected")
{
    TempDir dir;
    write_binary_store(triangle(), dir.path / "t.bin");
    std::string bytes = slurp(dir.path / "t.bin");

    dump(dir.path / "short.bin", bytes.substr(0, bytes.size() - 3));
    CHECK_THROWS_AS(open_binary_store(dir.path / "short.bin"), IoError);

    std::string magic = bytes;
    magic[0] = 'X';
    dump(dir.path / "magic.bin", magic);
    CHECK_THROWS_AS(open_binary_store(dir.path / "magic.bin"), IoError);

    std::string version = bytes;
    version[8] = 2;
    dump(dir.path / "version.bin", version);
    CHECK_THROWS_AS(open_binary_store(dir.path / "version.bin"), IoError);

    std::string flipped = bytes;
    flipped[40] ^= 1;
    dump(dir.path / "crc.bin", flipped);
    CHECK_THROWS_AS(open_binary_store(dir.path / "crc.bin"), IoError);

    CHECK_THROWS_AS(open_binary_store(dir.path / "missing.bin"), IoError);
}

TEST_CASE("random graph re-serializes byte-identically and answers probes identically")
{
    TempDir dir;
    Rng rng(2024);
    Graph g = random_graph_m(10000, 100000, rng);
    write_binary_store(g, dir.path / "a.bin");
    Graph disk = open_binary_store(dir.path / "a.bin");
    write_binary_store(disk, dir.path / "b.bin");
    CHECK(slurp(dir.path / "a.bin") == slurp(dir.path / "b.bin"));

    std::uniform_int_distribution<NodeId> node(0, g.num_nodes() - 1);
    for (int probe = 0; probe < 100000; ++probe) {
        NodeId a = node(rng), b = node(rng);
        REQUIRE(disk.has_link(a, b) == g.has_link(a, b));
        if (probe % 10 == 0)
            REQUIRE(std::ranges::equal(disk.out(a), g.out(a)));
    }
}

TEST_CASE("bulk_convert matches load_edgelist")
{
    TempDir dir;
    Rng rng(5);
    for (bool directed : {false, true}) {
        Graph g = random_graph_m(300, 2000, rng, directed);
        std::ostringstream text;
        text << "# comment\n";
        write_edgelist(g, text);
        text << "7 7\n";  // self-loop
        auto links = g.links();
        text << links[0].to << ' ' << links[0].from << '\n';  // duplicate (undirected) or reverse link
        dump(dir.path / "g.txt", text.str());

        ConvertOptions opts;
        opts.run_links = 97;  // many runs
        ConvertStats stats = bulk_convert(dir.path / "g.txt", dir.path / "g.bin", directed, opts);
        Graph expected = load_edgelist(dir.path / "g.txt", directed);
        Graph converted = open_binary_store(dir.path / "g.bin");
        CHECK(converted == expected);
        CHECK(stats.links == expected.num_links());
        CHECK(stats.nodes == expected.num_nodes());
        CHECK(stats.self_loops == 1);
        CHECK(stats.runs > 1);
        // no temporary files left behind
        std::size_t files = 0;
        for (auto & e : fs::directory_iterator(dir.path))
            files += e.is_regular_file();
        CHECK(files == 2);
    }
}

TEST_CASE("bulk_convert is invariant to line order")
{
    TempDir dir;
    Rng rng(8);
    Graph g = random_graph(200, 0.1, rng, false);
    for (NodeId v = 0; v < g.num_nodes(); ++v)
        REQUIRE(g.degree(v) > 0);
    std::ostringstream sorted;
    write_edgelist(g, sorted);
    std::vector<std::string> lines;
    std::istringstream in(sorted.str());
    for (std::string l; std::getline(in, l);)
        lines.push_back(l);
    std::shuffle(lines.begin(), lines.end(), rng);
    std::string shuffled;
    for (auto & l : lines)
        shuffled += l + "\n";
    dump(dir.path / "a.txt", sorted.str());
    dump(dir.path / "b.txt", shuffled);
    ConvertOptions opts;
    opts.run_links = 500;
    bulk_convert(dir.path / "a.txt", dir.path / "a.bin", false, opts);
    bulk_convert(dir.path / "b.txt", dir.path / "b.bin", false, opts);
    CHECK(slurp(dir.path / "a.bin") == slurp(dir.path / "b.bin"));
}
