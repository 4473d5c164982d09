//! Published reference tables, as `(significand, decimal exponent)`.

use crate::gf::NetworkClass;

/// One printed row: exact count, first- and second-order estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoldenRow {
    pub n: usize,
    pub exact: (&'static str, i64),
    pub first: (&'static str, i64),
    pub second: (&'static str, i64),
}

#[derive(Debug, Clone, Copy)]
pub struct GoldenTable {
    pub class: NetworkClass,
    pub k: usize,
    pub rows: &'static [GoldenRow],
}

const fn row(n: usize, exact: (&'static str, i64), first: (&'static str, i64), second: (&'static str, i64)) -> GoldenRow {
    GoldenRow { n, exact, first, second }
}

pub const GOLDEN: [GoldenTable; 6] = [
    GoldenTable {
        class: NetworkClass::Normal,
        k: 1,
        rows: &[
            row(49, ("1.509083862", 70), ("2.845078723", 70), ("1.316888413", 70)),
            row(81, ("1.424572126", 133), ("2.286221720", 133), ("1.331103718", 133)),
            row(121, ("2.805663893", 219), ("4.092442789", 219), ("2.693592858", 219)),
            row(169, ("3.126424192", 330), ("4.280475255", 330), ("3.042449065", 330)),
            row(225, ("2.988746000", 467), ("3.911561797", 467), ("2.931078655", 467)),
            row(289, ("2.485340363", 631), ("3.144767382", 631), ("2.449229483", 631)),
            row(361, ("1.354821659", 823), ("1.669930393", 823), ("1.339465018", 823)),
            row(441, ("2.903179416", 1043), ("3.504201765", 1043), ("2.876792390", 1043)),
            row(529, ("1.222842196", 1293), ("1.450922268", 1293), ("1.213731650", 1293)),
            row(625, ("4.366393995", 1572), ("5.107382228", 1572), ("4.339243703", 1572)),
            row(729, ("5.040854939", 1882), ("5.825548735", 1882), ("5.014299556", 1882)),
            row(841, ("6.468853840", 2223), ("7.398904501", 2223), ("6.439612952", 2223)),
            row(961, ("2.903035924", 2596), ("3.290787336", 2596), ("2.891652790", 2596)),
        ],
    },
    GoldenTable {
        class: NetworkClass::Normal,
        k: 2,
        rows: &[
            row(49, ("1.974631541", 72), ("8.538792514", 72), ("-0.634169808", 72)),
            row(81, ("0.652084068", 136), ("1.874987588", 136), ("0.308355286", 136)),
            row(121, ("3.279694748", 222), ("7.489681863", 222), ("2.369541406", 222)),
            row(169, ("0.775961070", 334), ("1.528183172", 334), ("0.644201521", 334)),
            row(225, ("1.393399104", 471), ("2.475285199", 471), ("1.234361225", 471)),
            row(289, ("1.993994409", 635), ("3.283176454", 635), ("1.830875936", 635)),
            row(361, ("1.751242120", 827), ("2.720337482", 827), ("1.643673031", 827)),
            row(441, ("5.742638603", 1047), ("8.518758291", 1047), ("5.468278229", 1047)),
            row(529, ("3.551625232", 1297), ("5.075344229", 1297), ("3.415952745", 1297)),
            row(625, ("1.799912695", 1577), ("2.493838978", 1577), ("1.743703701", 1577)),
            row(729, ("2.866620516", 1887), ("3.869919308", 1887), ("2.792091620", 1887)),
            row(841, ("4.954032473", 2228), ("6.541380718", 2228), ("4.845159005", 2228)),
            row(961, ("2.932551027", 2601), ("3.798889014", 2601), ("2.877366178", 2601)),
        ],
    },
    GoldenTable {
        class: NetworkClass::Normal,
        k: 3,
        rows: &[
            row(49, ("1.365816004", 74), ("17.08470069", 74), ("-0.104456524", 74)),
            row(81, ("1.755204956", 138), ("10.25149464", 138), ("-2.596848522", 138)),
            row(121, ("2.360997970", 225), ("9.138036014", 225), ("-0.232461034", 225)),
            row(169, ("1.215402285", 337), ("3.637203298", 337), ("0.481278310", 337)),
            row(225, ("4.159928205", 474), ("10.44260944", 474), ("2.589887410", 474)),
            row(289, ("1.034136900", 639), ("2.285118173", 639), ("0.768898277", 639)),
            row(361, ("1.472741571", 831), ("2.954309176", 831), ("1.200409327", 831)),
            row(441, ("0.742450513", 1052), ("1.380613859", 1052), ("0.639038343", 1052)),
            row(529, ("6.765254066", 1301), ("11.83574504", 1301), ("6.031172891", 1301)),
            row(625, ("4.878745045", 1581), ("8.117965422", 1581), ("4.455195521", 1581)),
            row(729, ("1.074095703", 1892), ("1.713861489", 1892), ("0.997859210", 1892)),
            row(841, ("2.503773287", 2233), ("3.855495246", 2233), ("2.355863510", 2233)),
            row(961, ("1.957523560", 2606), ("2.923628151", 2606), ("1.859821038", 2606)),
        ],
    },
    GoldenTable {
        class: NetworkClass::TreeChild,
        k: 1,
        rows: &[
            row(49, ("2.295774923", 70), ("2.845078723", 70), ("2.335681951", 70)),
            row(81, ("1.948607480", 133), ("2.286221720", 133), ("1.967849052", 133)),
            row(121, ("3.603212411", 219), ("4.092442789", 219), ("3.626159479", 219)),
            row(169, ("3.850668993", 330), ("4.280475255", 330), ("3.867799857", 330)),
            row(225, ("3.573001570", 467), ("3.911561797", 467), ("3.584734083", 467)),
            row(289, ("2.905589575", 631), ("3.144767382", 631), ("2.912921415", 631)),
            row(361, ("1.556662281", 823), ("1.669930393", 823), ("1.559775267", 823)),
            row(441, ("3.289723172", 1043), ("3.504201765", 1043), ("3.295065305", 1043)),
            row(529, ("1.370016200", 1293), ("1.450922268", 1293), ("1.371858728", 1293)),
            row(625, ("4.845849891", 1572), ("5.107382228", 1572), ("4.851336052", 1572)),
            row(729, ("5.549770266", 1882), ("5.825548735", 1882), ("5.555132339", 1882)),
            row(841, ("7.073239889", 2223), ("7.398904501", 2223), ("7.079140649", 2223)),
            row(961, ("3.155446557", 2596), ("3.290787336", 2596), ("3.157742486", 2596)),
        ],
    },
    GoldenTable {
        class: NetworkClass::TreeChild,
        k: 2,
        rows: &[
            row(49, ("4.640516422", 72), ("8.538792514", 72), ("5.481138402", 72)),
            row(81, ("1.224486692", 136), ("1.874987588", 136), ("1.352776820", 136)),
            row(121, ("5.411620540", 222), ("7.489681863", 222), ("5.782968374", 222)),
            row(169, ("1.176422691", 334), ("1.528183172", 334), ("1.233522622", 334)),
            row(225, ("1.989643302", 471), ("2.475285199", 471), ("2.061643874", 471)),
            row(289, ("2.722734486", 635), ("3.283176454", 635), ("2.799076281", 635)),
            row(361, ("2.309772743", 827), ("2.720337482", 827), ("2.361449330", 827)),
            row(441, ("7.367315911", 1047), ("8.518758291", 1047), ("7.501931598", 1047)),
            row(529, ("4.454475775", 1297), ("5.075344229", 1297), ("4.522213731", 1297)),
            row(625, ("2.215316571", 1577), ("2.493838978", 1577), ("2.243793885", 1577)),
            row(729, ("3.472411188", 1887), ("3.869919308", 1887), ("3.510643410", 1887)),
            row(841, ("5.919519663", 2228), ("6.541380718", 2228), ("5.975973477", 2228)),
            row(961, ("3.462830748", 2601), ("3.798889014", 2601), ("3.491714733", 2601)),
        ],
    },
    GoldenTable {
        class: NetworkClass::TreeChild,
        k: 3,
        rows: &[
            row(49, ("4.905522940", 74), ("17.08470069", 74), ("7.907916294", 74)),
            row(81, ("4.488502332", 138), ("10.25149464", 138), ("5.968713581", 138)),
            row(121, ("4.976717574", 225), ("9.138036014", 225), ("6.014536995", 225)),
            row(169, ("2.258644701", 337), ("3.637203298", 337), ("2.585228301", 337)),
            row(225, ("7.072035184", 474), ("10.44260944", 474), ("7.825035424", 474)),
            row(289, ("1.645107613", 639), ("2.285118173", 639), ("1.779711540", 639)),
            row(361, ("2.225232465", 831), ("2.954309176", 831), ("2.369675891", 831)),
            row(441, ("1.076588119", 1052), ("1.380613859", 1052), ("1.133422020", 1052)),
            row(529, ("9.485462012", 1301), ("11.83574504", 1301), ("9.900887645", 1301)),
            row(625, ("6.651391940", 1581), ("8.117965422", 1581), ("6.897042119", 1581)),
            row(729, ("1.430044284", 1892), ("1.713861489", 1892), ("1.475194062", 1892)),
            row(841, ("3.266427497", 2233), ("3.855495246", 2233), ("3.355617999", 2233)),
            row(961, ("2.509177651", 2606), ("2.923628151", 2606), ("2.569025778", 2606)),
        ],
    },
];

/// The printed table for `(class, k)`.
pub fn golden_table(class: NetworkClass, k: usize) -> Option<&'static GoldenTable> {
    GOLDEN.iter().find(|t| t.class == class && t.k == k)
}
