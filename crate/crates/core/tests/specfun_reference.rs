//! Spot checks of `J_m` and `N_m` against values computed with mpmath at 25
//! significant digits, over the full supported order and argument range.

use coaxmode::specfun::{bessel_j, neumann_n};

// (m, x, J_m(x), N_m(x))
const REFERENCE: &[(i32, f64, f64, f64)] = &[
    (20, 39.542867, 0.13637349734609958, -0.00758714648702147),
    (
        3,
        16.416933002715115,
        0.037551605906384136,
        -0.19496030590100893,
    ),
    (23, 90.979436, 0.07699578111594511, 0.036108312277122905),
    (
        13,
        3.9982882621417177,
        9.806327164858577e-07,
        -26251.18053912439,
    ),
    (
        4,
        20.24340308110226,
        0.09702190495859571,
        0.1505153109202969,
    ),
    (3, 12.467816, 0.11639083768701645, 0.19748114736942832),
    (14, 58.341391, 0.09552215469802723, -0.045992595475939944),
    (3, 39.728379, -0.12379592498180643, 0.02726604227753193),
    (
        14,
        1415.1769760617094,
        -0.015605102131638526,
        -0.01436504355913723,
    ),
    (
        18,
        17.543462512844105,
        0.14412896599843306,
        -0.34571479134819383,
    ),
    (
        36,
        788.4209479000009,
        -0.028334406560761142,
        0.0023379631044493253,
    ),
    (
        11,
        26.7439990692897,
        -0.004320418803514917,
        -0.16150434406123415,
    ),
    (
        12,
        19.340459776516248,
        -0.1878602067315331,
        -0.08086154172419394,
    ),
    (4, 61.939058, 0.002006349337557099, -0.10146572227689855),
    (31, 42.816471, 0.06082257194013342, -0.13347522939556772),
    (
        20,
        3472.548353882543,
        -0.012669049411316474,
        -0.0047778134016758,
    ),
    (
        23,
        583.8172046036825,
        0.024851652794818838,
        0.021764324118404097,
    ),
    (44, 8.277316, 3.5581325058423387e-28, -2.07015942895329e+25),
    (19, 87.526236, -0.06457071639153146, 0.05728531341017512),
    (
        46,
        45.0561536566011,
        0.0955122375095526,
        -0.27151721716017496,
    ),
    (
        4,
        3.226539087728354,
        0.16354345721889155,
        -0.7824794166376032,
    ),
    (
        48,
        3977.60152147474,
        0.012508426916909364,
        -0.001897914292771244,
    ),
    (
        26,
        102.16335327699596,
        0.04128183319153299,
        0.0688421450225661,
    ),
    (48, 78.930508, 0.05433804742106726, -0.08488579001615432),
    (
        20,
        1.262031881801337,
        4.0405806857835614e-23,
        -3.9467980863086304e+20,
    ),
    (31, 45.674913, 0.08582022711293148, 0.10767282832382098),
    (5, 47.462424, 0.021471164440413193, 0.11413311439533118),
    (
        42,
        243.75638911718983,
        -0.0008845783374743284,
        -0.05148368158607451,
    ),
    (19, 99.310284, 0.01480996629532677, 0.07944566122043095),
    (
        28,
        2.06418517529294,
        7.656310483970487e-30,
        -1.4888723250598051e+27,
    ),
    (
        42,
        4404.447116785863,
        -0.009564162303471391,
        0.007285162626143511,
    ),
    (
        22,
        0.05041674076443827,
        6.07024717497223e-57,
        -2.3835387332276014e+54,
    ),
    (
        3,
        0.5303853979513652,
        0.0030541072700570053,
        -35.38037079299046,
    ),
    (
        47,
        2.2166555817702642,
        4.738291758386322e-58,
        -1.430916322705653e+55,
    ),
    (
        31,
        4.955921351704325,
        1.653204741891834e-22,
        -6.292019575003123e+19,
    ),
    (
        35,
        0.06630661510006054,
        1.6002737331702246e-92,
        -5.683143028536684e+89,
    ),
    (27, 27.914264, 0.18758886656852672, -0.18346058136183993),
    (26, 68.304034, 0.09674212868750023, 0.026822260711111375),
    (24, 15.176998, 0.0001907049007238294, -89.94371209957207),
    (
        11,
        89.35113258215685,
        -0.08111689399715946,
        0.024483875920619798,
    ),
    (
        0,
        34.256344888488094,
        -0.06301753196140758,
        0.12087518285276325,
    ),
    (
        16,
        0.07482700363864717,
        7.043660124489154e-37,
        -2.8244671024158986e+34,
    ),
    (
        34,
        25.006179380313306,
        0.0005534505369975339,
        -25.040525150622194,
    ),
    (8, 51.597594, 0.04405289884061911, 0.10270271538143241),
    (39, 74.004496, -0.08825817013724067, -0.04828352180092677),
    (29, 78.018952, 0.07911406539013265, -0.05030010010659028),
    (43, 39.298653, 0.03134265127189106, -0.604757875460967),
    (
        25,
        7.747059811905811,
        1.8140408015183703e-11,
        -738298186.4685068,
    ),
    (
        25,
        0.02535628911849788,
        2.430771418338138e-73,
        -5.2380087698677886e+70,
    ),
    (
        13,
        0.04566356665310185,
        7.357349025325952e-32,
        -3.3280367330276105e+29,
    ),
    (
        38,
        0.01003228107724969,
        7.861903128200479e-133,
        -1.0654641894891851e+130,
    ),
    (9, 94.899981, 0.023673713355987745, -0.07860121888369931),
    (
        39,
        1761.9527760265075,
        -0.014086513304310516,
        -0.012766109865694715,
    ),
    (
        39,
        64.04090656896317,
        -0.01606489575674654,
        0.11077453740305676,
    ),
    (22, 47.467731, 0.004638362162858551, -0.12292542403781512),
    (7, 99.310962, 0.07873536078509176, -0.015066848583004526),
    (
        29,
        0.7432140058095886,
        3.8361426464607167e-44,
        -2.8622016008817837e+41,
    ),
    (
        9,
        1.1371428616846757,
        1.6566927747809094e-08,
        -2152315.5741228233,
    ),
    (
        16,
        142.01709116918676,
        -0.04862127036551381,
        -0.04633964437906266,
    ),
    (
        33,
        5080.581672783536,
        0.000580685561136116,
        0.011178996026008454,
    ),
];

fn envelope(m: i32, x: f64) -> f64 {
    if (m as f64) < x {
        (2.0 / (std::f64::consts::PI * x)).sqrt().min(1.0)
    } else {
        0.0
    }
}

#[test]
fn bessel_j_reference_points() {
    for &(m, x, j, _) in REFERENCE {
        let got = bessel_j(m, x).unwrap().value;
        let scale = j.abs().max(envelope(m, x));
        assert!(
            (got - j).abs() <= 1e-12 * scale,
            "J_{m}({x}) = {got:e}, expected {j:e}"
        );
    }
}

#[test]
fn neumann_n_reference_points() {
    for &(m, x, _, y) in REFERENCE {
        if y.abs() > 1e300 {
            assert!(neumann_n(m, x).is_err());
            continue;
        }
        let got = neumann_n(m, x).unwrap().value;
        let scale = y.abs().max(envelope(m, x));
        assert!(
            (got - y).abs() <= 1e-12 * scale,
            "N_{m}({x}) = {got:e}, expected {y:e}"
        );
    }
}
