"""Frozen reference values shared by the test suite.

Every decimal below was computed independently with mpmath at 80
decimal digits of working precision and frozen at 42 significant
digits.  Tests compare package enclosures against these references
through ``assert_contains``, which allows for the reference's own
rounding (below the 40th digit) but nothing else.
"""

from fractions import Fraction

CONSTANTS = {
    "pi": "3.14159265358979323846264338327950288419717",
    "ln2": "0.693147180559945309417232121458176568075500",
    "catalan_g": "0.915965594177219015054603514932384110774149",
    "zeta3": "1.20205690315959428539973816151144999076499",
    "sqrt5": "2.23606797749978969640917366873127623544062",
    "alpha": "1.61803398874989484820458683436563811772031",
    "zeta2": "1.64493406684822643647241516664602518921895",
}

# Closed-form value of every catalog entry (the right-hand side).
RHS_REFS = {
    "EQ1": "0.345654901949164100391481868372845725790285",
    "EQ2": "0.0338449175499706042559596492178237721038139",
    "EQ3": "0.144719782244714069488559941061280892346817",
    "EQ4": "0.532384673623827670148276873731805248019860",
    "FIB_H": "0.0111466997345871286421645592554871449708808",
    "EQ6": "0.197833822570338058456917014210953392791154",
    "EQ7": "0.105262679494560073260247266318899965255279",
    "EQ8": "0.0280494875975646673975303293293409616569541",
    "FIB_H_2R": "0.0111466997345871286421645592554871449708808",
    "LUCAS_H": "0.0106709425400445769284548281790924587784184",
    "EQ11": "0.871396960234923325827292840564466680547519",
    "EQ12": "0.0741333264655466604036583214005938668928141",
    "EQ13": "0.0315927924554480131503753723468258227199259",
    "LUCAS_H_2R": "0.0106709425400445769284548281790924587784184",
    "LUCAS_HD": "0.00530745011899235428088456830050651585477048",
    "EQ15_R0": "0.223936734922359760782812424951714066635800",
    "FIB_HD": "0.00554279563516195802450955433821741583433723",
    "EQ17": "0.575364144903561854878438011987654863007019",
    "EQ17_AS_PRINTED": "2.77258872223978123766892848583270627230200",
    "EQ18": "0.342918608617345109447024577618207653074546",
    "EQ19": "0.0358260086827839044626706497487505508864359",
    "EQ20": "0.0155579936925833297296340557977131333160308",
    "EQ21": "0.0912358094206249973610127816033741729178940",
    "EQ22": "0.0502238838058875210363583161181308824125563",
    "EQ23": "0.0138358870290204781178117172864021065795400",
    "EQ24": "0.409137092586739587443690504722431242566000",
    "EQ25": "0.0903106701275906252580422728472855372486959",
    "EQ26": "0.756321408546187430931089298683519314655660",
    "EQ27": "0.292318793442934796107399383043455385889695",
    "EQ28": "0.0428033285232674717108269925257940461798176",
    "EQ29": "0.00106155555124311972299115990433729362066985",
    "EQ30": "0.176192730752614493116899630221703814656796",
    "EQ31": "-0.0487179037557513592042481338039982803322546",
    "EQ32": "0.0367279409517062974271749113644417034700965",
    "EQ33": "-0.0273315182374525367315300558141090888494474",
    "EQ34": "0.0368155389092553895132341021478066744241856",
    "EQ35": "-0.0368155389092553895132341021478066744241856",
    "EQ36": "0.294524311274043116105872817182453395393485",
    "EQ37": "0.223936734922359760782812424951714066635800",
    "EQ37_AS_PRINTED": "2.71683769548328181435889274595398607723858",
    "EQ38": "0.0800628525353655411312827596241652152944227",
    "EQ38_AS_PRINTED": "2.72125812645483637220729196179954429617651",
    "EQ39": "0.191314731785262710682720827945370461569196",
    "EQ40": "0.0752368378980999804281274610894742723329648",
    "THM24": "0.184306580334908298072253956124880417088664",
    "THM25A": "0.523508079703349030200724893928930088513661",
    "THM25B": "0.625612342903343565393592921564142604483400",
    "THM26": "1.64493406684822643647241516664602518921895",
    "THM27": "0.112678961780678528976817054960227320224631",
}

# (name, x, k, value) generating-function samples.
GF_REFS = [
    ("GF_M", "1/8", None, "0.532384673623827670148276873731805248019860"),
    ("GF_M", "-1/8", None, "-0.157155163269332345285928924743368129449689"),
    ("GF_M", "3/16", None, "1.62186043243265752791205246185739654628796"),
    ("GF_HD", "1/8", None, "0.223936734922359760782812424951714066635800"),
    ("GF_HD", "-1/4", None, "-0.133096168405956917537069218432951312004965"),
    ("GF_HD_AS_PRINTED", "1/16", None,
     "3.12144683773915093125565977914578851210093"),
    ("GF_HD_AS_PRINTED", "3/16", None,
     "2.77258872223978123766892848583270627230200"),
    ("GF_HD_HALF", "1/7", None,
     "0.647134430233080983545241135835471249735978"),
    ("GF_HD_HALF", "-1/8", None,
     "-0.165530437227903512059736860583152332970414"),
    ("GF_H2N", "1/9", None, "0.605882331258319741578559878557955234226502"),
    ("GF_H2N", "-1/4", None, "-0.357032903328316678319881643384665378640765"),
    ("GF_CAT_HD", "-1/8", None,
     "-0.0487179037557513592042481338039982803322546"),
    ("GF_CAT_HD", "1/4", None,
     "0.613705638880109381165535757083646863849000"),
    ("GF_CAT_HALF", "1/8", None,
     "0.191314731785262710682720827945370461569196"),
    ("GF_CAT_HALF", "1/4", None,
     "2.00000000000000000000000000000000000000000"),
    ("GF_CAT_H2N", "1/10", None,
     "0.209575737683019850455459283657123216921134"),
    ("GF_CAT_H2N", "-1/4", None,
     "-0.223251675647881184045394718076033875518397"),
    ("GF_EQ28", "1/2", None, "0.0428033285232674717108269925257940461798176"),
    ("GF_EQ28", "1", None, "0.196349540849362077403915211454968930262323"),
    ("GF_EQ29", "-1", None, "-0.0368155389092553895132341021478066744241856"),
    ("GF_EQ29", "3/4", None, "0.00828588600006938527694721646304593081061259"),
    ("GF_EQ30", "2/3", None, "0.247913568776839024559787371230121854714355"),
    ("GF_EQ30", "-1", None, "-0.589048622548086232211745634364906790786969"),
    ("GF_SHIFTED", "1/8", 0, "1.41421356237309504880168872420969807856967"),
    ("GF_SHIFTED", "-1/5", 3, "0.464400750007010119694211042290792151979388"),
    ("GF_SHIFTED", "3/16", 5, "8.42798353909465020576131687242798353909465"),
]

# Z(s, a) = sum_{n>=a} n^-s and ZL(s, a) = sum_{n>=a} n^-s ln n.
Z_REFS = [
    ("3/2", 33, "0.350812830844260136177550955735520560516017"),
    ("5/2", 33, "0.00359765470101581191730134997114248736870119"),
    ("2", 100, "0.0100501666633335713952456684657014225356282"),
    ("7/2", 4097, "0.000000000372415359199221834589817917612138300972535"),
]
ZL_REFS = [
    ("3/2", 33, "1.92291702223506099521615343077080853035531"),
    ("5/2", 33, "0.0149233036372137923703285892213537053857271"),
    ("2", 100, "0.0562826445524726112232469377745513850155214"),
    ("7/2", 4097, "0.00000000324667548202646644435325631149932837125872"),
]

# Exact partial sums of the THM26 stream (first 3 and first 5 terms).
THM26_PARTIAL_3 = Fraction(161792, 99225)
THM26_PARTIAL_5 = Fraction(9987533824, 6087156075)


def ref_fraction(decimal: str) -> Fraction:
    """Exact rational value of a frozen decimal string."""
    return Fraction(decimal)


def assert_contains(ball, decimal: str, what: str = "") -> None:
    """The ball must contain the frozen value up to its own rounding.

    The frozen strings carry 42 significant digits, so the true value
    differs from the parsed rational by well under (|v| + 1) * 1e-40.
    """
    val = Fraction(decimal)
    slack = (abs(val) + 1) / Fraction(10 ** 40)
    lo, hi = ball.to_interval_fractions()
    assert lo - slack <= val <= hi + slack, (
        f"{what}: {decimal} outside [{float(lo)}, {float(hi)}]")
