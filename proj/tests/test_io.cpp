#include "elastica/flow.hpp"
#include "elastica/io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

using namespace elastica;

namespace {

std::string temp_path(const std::string& name)
{
    return (std::filesystem::temp_directory_path() / ("elastica_io_" + name)).string();
}

} // namespace

TEST(Csv, RoundTripIsBitExact)
{
    for (const auto& c : {sample_figure_eight(2, 256, true), canonical_half_leaf(100), elastic_propeller(64)}) {
        std::ostringstream os;
        write_curve_csv(os, c);
        std::istringstream is(os.str());
        const auto back = read_curve_csv(is);
        EXPECT_EQ(back.closed(), c.closed());
        EXPECT_EQ(back.points(), c.points());
    }
}

TEST(Csv, HeaderLayout)
{
    std::ostringstream os;
    write_curve_csv(os, circle(3, 1.0, 4));
    std::istringstream is(os.str());
    std::string l1, l2, l3;
    std::getline(is, l1);
    std::getline(is, l2);
    std::getline(is, l3);
    EXPECT_EQ(l1, "dim,closed");
    EXPECT_EQ(l2, "3,1");
    EXPECT_EQ(l3, "1,0,0");
}

TEST(Csv, AcceptsCrlfAndBlankLines)
{
    std::istringstream is("dim,closed\r\n2,0\r\n\r\n0,0\r\n1,0.5\r\n2,0\r\n");
    const auto c = read_curve_csv(is);
    EXPECT_EQ(c.size(), 3u);
    EXPECT_FALSE(c.closed());
    EXPECT_EQ(c.point(1)[1], 0.5);
}

TEST(Csv, MalformedInputs)
{
    for (const char* text : {"", "x,y\n0,0\n", "dim,closed\n2\n", "dim,closed\n2,3\n0,0\n1,1\n",
                             "dim,closed\n2,1\n0,0,0\n", "dim,closed\n2,1\n0,abc\n", "dim,closed\n2,1\n0,1x\n",
                             "dim,closed\n1,1\n0\n1\n"}) {
        std::istringstream is(text);
        EXPECT_THROW(read_curve_csv(is), std::exception) << text;
    }
}

TEST(Json, RoundTripWithMetadata)
{
    const auto c = sample_figure_eight(2, 128, true);
    const json meta{{"generator", "figure-eight"}, {"parameters", {{"n", 128}}}};
    const json j = curve_to_json(c, meta);
    const auto text = j.dump();
    const auto back = curve_from_json(json::parse(text));
    EXPECT_EQ(back.points(), c.points());
    EXPECT_EQ(back.vertex_marks(), c.vertex_marks());
    EXPECT_EQ(json::parse(text)["metadata"]["generator"], "figure-eight");
}

TEST(Json, MissingFieldsThrow)
{
    EXPECT_THROW(curve_from_json(json{{"dim", 2}}), io_error);
    EXPECT_THROW(curve_from_json(json{{"dim", 2}, {"closed", true}, {"points", {{0.0, 1.0, 2.0}}}}), io_error);
}

TEST(Json, NetworkRoundTrip)
{
    const auto net = build_wavelike_network(0.75, 128);
    const auto back = network_from_json(json::parse(network_to_json(net).dump()));
    for (std::size_t i = 0; i < 3; ++i)
        EXPECT_EQ(back.curve(i).points(), net.curve(i).points());
    EXPECT_EQ(back.angle_spec().alpha, net.angle_spec().alpha);
    EXPECT_EQ(theta_energy(back), theta_energy(net));
}

TEST(Files, SaveAndLoadByExtension)
{
    const auto c = circle(2, 2.0, 50);
    for (const auto& name : {std::string("c.csv"), std::string("c.json")}) {
        const auto path = temp_path(name);
        save_curve(path, c);
        EXPECT_EQ(load_curve(path).points(), c.points());
        std::remove(path.c_str());
    }
    EXPECT_THROW(load_curve(temp_path("does_not_exist.csv")), io_error);
}

TEST(Files, OutputIsDeterministic)
{
    const auto a = temp_path("a.json"), b = temp_path("b.json");
    save_curve(a, perturbed_circle(3, 128).curve, {{"seed", 3}});
    save_curve(b, perturbed_circle(3, 128).curve, {{"seed", 3}});
    EXPECT_EQ(read_file(a), read_file(b));
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST(Manifest, ChecksumAndLayout)
{
    EXPECT_EQ(fnv1a64(""), 14695981039346656037ULL);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
    EXPECT_EQ(constants_checksum(), constants_checksum());
    EXPECT_EQ(constants_checksum().rfind("fnv1a64:", 0), 0u);

    const auto out = temp_path("m.csv");
    RunManifest m{"generate circle", {{"n", "50"}}, {out}};
    write_manifest(m);
    const auto j = json::parse(read_file(manifest_path(out)));
    EXPECT_EQ(j["command"], "generate circle");
    EXPECT_EQ(j["outputs"][0], out);
    EXPECT_EQ(j["versions"]["toolkit"], toolkit_version);
    EXPECT_EQ(j["versions"]["constants_checksum"], constants_checksum());
    std::remove(manifest_path(out).c_str());
    EXPECT_THROW(write_manifest(RunManifest{"x", {}, {}}), io_error);
}

TEST(Manifest, ConstantsJsonHasFifteenDigits)
{
    const auto j = constants_json();
    EXPECT_NEAR(j["m_star"].get<double>(), constants().m_star, 1e-14);
    EXPECT_EQ(j["m_star"].get<double>(), 0.82611476598497);
    EXPECT_NEAR(j["phi_star_deg"].get<double>(), 49.29008929210001, 1e-12);
}
