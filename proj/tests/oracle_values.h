// Copyright 2026 The qrc-robustness Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Generated by tests/oracles/generate.py; do not edit.
#pragma once

namespace qrc::oracle {

// N = 1, Omega = 2pi x 5, alpha Delta = 2pi x 1.5: <sigma^z>(t_m), m = 1..6.
inline constexpr double kSingleAtomSz[] = {
    0.48721273138653171, 0.22391687400355303, 0.1422883764095218, 0.53132579304594429,
    0.013676185350281478, 0.42203270265961412};

// N = 1, alpha = 0.15, Delta = 2pi x 5: d<sigma^z>(t_m)/dDelta.
inline constexpr double kSingleAtomDerivative[] = {
    0.0085740595734407066, 0.0013966669487608385, 0.005858631885180543, 0.0052785174287084402,
    0.0010303199959871279, 0.010775574349475292};

// N = 8 reference chain with Delta_i = 2pi x 10 (i + 1) / 9: full embedding.
inline constexpr double kChainEmbedding[] = {
    0.066215071230191325, 0.13197048689774643, 0.197037665831158, 0.26015069705054428,
    0.32005337438620962, 0.37505584379853585, 0.42302028290540961, 0.4613448933816271,
    0.0087361657626216782, 0.013046772725526234, 0.017225884532517832, 0.02119235336423328,
    0.024834347992190059, 0.028010317501962756, 0.030547984637256387, 0.025997048855628382,
    0.034332027439885476, 0.042237577483180896, 0.049496296645861665, 0.055826190681762117,
    0.060883909346074669, 0.051247347988921506, 0.063062245567142822, 0.073900093253992313,
    0.083350921122476121, 0.090902318337281601, 0.083241908434002629, 0.097570545273329312,
    0.11004897300171991, 0.12001918546446178, 0.12000851929129991, 0.13538839935599384,
    0.14765493011809411, 0.15861872241613517, 0.17302929606055897, 0.19511721278911731,
    -3.8682372251463981e-06, 0.0001178589532277903, 0.0010805407222314383, 0.0047260832692361376,
    0.014408050485521025, 0.035067069297608611, 0.072795933200326873, 0.13468059083075984,
    -4.4228845863525379e-07, -9.5411299194658739e-08, -2.9018879854625368e-08, -6.0001042655188908e-08,
    -1.3761525163857868e-07, -2.8255049039360713e-07, -5.2141176937192668e-07, -2.4484195253957064e-06,
    3.2961377617601872e-07, 1.6729154923775247e-06, 4.1254390694567961e-06, 8.5768633615174172e-06,
    1.5872273428169104e-05, -3.2138534973719102e-06, 1.5108072465304379e-05, 3.7846594404701908e-05,
    7.8648571845744975e-05, 0.00014552501205349153, 4.9641767342886722e-05, 0.00016496265626743823,
    0.00034397836213508927, 0.00063650166793331568, 0.00047550561951814228, 0.0010478230503553673,
    0.0019404279863983083, 0.002520494269245931, 0.0047218726439141262, 0.0097941935286669848,
    0.066222768971363422, 0.13173449247714583, 0.19488072540945051, 0.25077861436468374,
    0.29187127499437782, 0.30816999233589415, 0.28990325909448122, 0.23138743018992974,
    0.0087206888413457473, 0.012905270509167788, 0.016607222483154993, 0.01932851393111612,
    0.020407866749445613, 0.01919819567421896, 0.015323116560959638, 0.025661616040935836,
    0.033035577592860688, 0.038449453327965073, 0.040596604215647016, 0.038190256254592783,
    0.030481706373712544, 0.048846052840237283, 0.056878988096965621, 0.060056310474706366,
    0.056496548779763602, 0.045092952840483459, 0.073152294348005395, 0.077280984478922787,
    0.072701485577228775, 0.058027031114863237, 0.089906269651222948, 0.084613330126008579,
    0.067535419125501941, 0.089361215961205928, 0.071307338264350234, 0.067246785688371127,
    -1.5420930945531097e-05, 0.00047172467824799398, 0.0043028401560650156, 0.018578534234328221,
    0.055109511345216231, 0.12754703641825527, 0.24336913402211702, 0.39272059698175021,
    -1.7616971671741144e-06, -4.2959191079786074e-07, -3.2550185696117451e-07, -8.6232353364162906e-07,
    -1.970276144278027e-06, -3.7528903327060936e-06, -6.0549535932097331e-06, -7.7917012490692772e-06,
    7.894022704520165e-06, 2.5921199362975711e-05, 6.015450587546628e-05, 0.00011480393169670255,
    0.00018525913667229166, 5.204177497028159e-05, 0.00023558610582892839, 0.0005487363756500282,
    0.0010471831032422586, 0.0016898241756972063, 0.00098110465036460592, 0.0023678684440242449,
    0.0045214651936916414, 0.0072962149146344399, 0.0070209006431775599, 0.013411521466022491,
    0.021642883256759445, 0.031167952906857796, 0.050093166316858478, 0.09588458307646798,
    0.066238062846918244, 0.13126194014442955, 0.19060554037457145, 0.23268150910429664,
    0.24044706387560844, 0.19868540438647919, 0.11117439499626014, 0.020744838804636696,
    0.0086896991996179007, 0.012624713678476951, 0.015412309455089562, 0.015926732859677092,
    0.013160535697472525, 0.0073639798267396972, 0.0013741009193405547, 0.024999719117301922,
    0.030540829986132001, 0.031561454507104209, 0.026079829823506193, 0.01459297700501358,
    0.0027230153572766575, 0.04430715866443477, 0.045828451902620831, 0.037870517204849692,
    0.021190496606164885, 0.0039541037571180597, 0.055912622079536359, 0.04622913324325071,
    0.025868454026746313, 0.0048270251429760463, 0.047866672183104739, 0.026734039585645818,
    0.00498851559835169, 0.022434498394237369, 0.0041286686026300095, 0.0027329699579269028,
    -3.4510843648694056e-05, 0.0010624180614549261, 0.009608817564435778, 0.040598613074181125,
    0.11495678438799918, 0.24380795243647746, 0.39944450973121548, 0.49454014932381979,
    -3.9358221917418224e-06, -1.1421987177843984e-06, -1.4752098525042112e-06, -3.9814565611154262e-06,
    -8.4113488380416213e-06, -1.3780035408417213e-05, -1.7064307547581814e-05, -1.0134697625282379e-05,
    4.1322308877843328e-05, 0.00012203952990016281, 0.00025903734162595338, 0.00042439293049344184,
    0.00052541500076090653, 0.00034553704587508491, 0.0011021239497202261, 0.0023427560600987754,
    0.0038382516251259432, 0.0047519645958798394, 0.0046587972252427196, 0.0098976375110025223,
    0.016217234149928181, 0.020077708192293403, 0.02821612377441652, 0.045923184923064617,
    0.056851092858501345, 0.097780473908534504, 0.12057870241778776, 0.19766065128049026};

// 28 -> 16 area resampling of pixel(r, c) = ((31 r + 17 c) mod 256) / 255.
inline constexpr double kAreaDownsample[] = {
    0.080672268907563016, 0.19495798319327734, 0.3092436974789915, 0.42352941176470604,
    0.54733893557422952, 0.66162464985994429, 0.77591036414565817, 0.89019607843137283,
    0.58375350140056059, 0.20632252901160475, 0.23865546218487393, 0.35294117647058809,
    0.47675070028011207, 0.59103641456582645, 0.70532212885154066, 0.81960784313725477,
    0.2890756302521007, 0.40336134453781508, 0.51764705882352957, 0.63193277310924378,
    0.75574229691876782, 0.78807523009203684, 0.61552621048419376, 0.23809523809523805,
    0.21848739495798314, 0.33277310924369768, 0.44705882352941179, 0.56134453781512594,
    0.68515406162464998, 0.79943977591036386, 0.70884353741496597, 0.41336534613845527,
    0.49747899159663861, 0.61176470588235299, 0.72605042016806731, 0.75838335334133644,
    0.57486994797919166, 0.27939175670268085, 0.18879551820728285, 0.30308123249299712,
    0.42689075630252088, 0.54117647058823515, 0.65546218487395003, 0.76974789915966446,
    0.75014005602240874, 0.37270908363345367, 0.20016006402561018, 0.23249299719887964,
    0.70588235294117685, 0.82016806722689073, 0.85250100040016041, 0.22921168467386965,
    0.16862745098039225, 0.28291316526610633, 0.39719887955182076, 0.51148459383753475,
    0.6352941176470589, 0.74957983193277333, 0.8638655462184871, 0.65034013605442231,
    0.098039215686274508, 0.21232492997198885, 0.32661064425770303, 0.44089635854341752,
    0.74725890356142477, 0.45178071228491418, 0.15630252100840325, 0.2705882352941178,
    0.39439775910364172, 0.50868347338935571, 0.62296918767507004, 0.73725490196078491,
    0.86106442577030762, 0.60656262505002057, 0.2496198479391756, 0.19999999999999996,
    0.32380952380952366, 0.43809523809523798, 0.55238095238095264, 0.66666666666666696,
    0.21808723489395757, 0.250420168067227, 0.36470588235294105, 0.47899159663865543,
    0.60280112044817924, 0.71708683473389379, 0.79039615846338529, 0.65882352941176481,
    0.20896358543417354, 0.2003201280512204, 0.29411764705882359, 0.40840336134453781,
    0.53221288515406151, 0.64649859943977583, 0.76078431372549038, 0.71116446578631443,
    0.34453781512605042, 0.4588235294117648, 0.57310924369747873, 0.6873949579831935,
    0.81120448179271709, 0.80256102440976385, 0.44561824729891941, 0.15014005602240893,
    0.2739495798319328, 0.38823529411764685, 0.50252100840336134, 0.61680672268907566,
    0.7406162464985997, 0.8139255702280912, 0.74381752701080439, 0.20248099239695891,
    0.55294117647058816, 0.66722689075630237, 0.78151260504201747, 0.89579831932773091,
    0.44593837535013964, 0.19143657462985186, 0.2442577030812326, 0.35854341736694684,
    0.48235294117647037, 0.59663865546218509, 0.7109243697478993, 0.82521008403361373,
    0.70316126450580263, 0.36670668267306938, 0.1736694677871147, 0.28795518207282933,
    0.77871148459383766, 0.77006802721088452, 0.49507803121248534, 0.11764705882352941,
    0.24145658263305333, 0.35574229691876746, 0.47002801120448179, 0.58431372549019622,
    0.7081232492997197, 0.82240896358543447, 0.62937174869947932, 0.29291716686674651,
    0.17086834733893563, 0.28515406162465001, 0.39943977591036406, 0.51372549019607827,
    0.45442176870748291, 0.19991996798719502, 0.21176470588235291, 0.3260504201680674,
    0.44985994397759105, 0.56414565826330509, 0.67843137254901975, 0.79271708683473385,
    0.79359743897559021, 0.25226090436174481, 0.18215286114445783, 0.25546218487394956,
    0.37927170868347343, 0.49355742296918786, 0.60784313725490191, 0.72212885154061635,
    0.19159663865546209, 0.30588235294117661, 0.42016806722689065, 0.53445378151260492,
    0.65826330532212918, 0.77254901960784317, 0.78439375750300122, 0.52989195678271284,
    0.2849139655862345, 0.23529411764705882, 0.34957983193277326, 0.46386554621848741,
    0.58767507002801134, 0.70196078431372544, 0.79575830332132913, 0.78711484593837566,
    0.40000000000000008, 0.51428571428571435, 0.62857142857142867, 0.74285714285714288,
    0.86666666666666703, 0.4892356942777108, 0.21424569827931186, 0.20560224089635856,
    0.3294117647058824, 0.44369747899159656, 0.55798319327731072, 0.6722689075630256,
    0.79607843137254897, 0.74645858343337357, 0.38951580632252936, 0.13501400560224089,
    0.62577030812324974, 0.74005602240896351, 0.85434173669467783, 0.72276910764305735,
    0.088515406162464977, 0.20280112044817927, 0.31708683473389343, 0.43137254901960781,
    0.5551820728291319, 0.669467787114846, 0.78375350140056022, 0.89803921568627498,
    0.34573829531812705, 0.13221288515406157, 0.24649859943977587, 0.36078431372549036,
    0.83417366946778693, 0.70260104041616633, 0.36614645858343331, 0.23457382953181258,
    0.29691876750700263, 0.41120448179271712, 0.52549019607843128, 0.63977591036414561,
    0.76358543417366931, 0.79591836734693933, 0.62336934773909514, 0.24593837535013999,
    0.22633053221288507, 0.34061624649859962, 0.4549019607843135, 0.5691876750700281,
    0.32549019607843127, 0.19391756702681068, 0.26722689075630252, 0.38151260504201662,
    0.5053221288515406, 0.61960784313725481, 0.73389355742296958, 0.76622649059623893,
    0.58271308523409326, 0.28723489395758284, 0.19663865546218484, 0.31092436974789905,
    0.43473389355742303, 0.54901960784313719, 0.66330532212885152, 0.77759103641456551,
    0.24705882352941172, 0.36134453781512588, 0.47563025210084015, 0.58991596638655486,
    0.71372549019607856, 0.82801120448179255, 0.53253301320528179, 0.23705482192877159,
    0.17647058823529418, 0.29075630252100826, 0.40504201680672286, 0.51932773109243691,
    0.64313725490196127, 0.75742296918767515, 0.87170868347338948, 0.65818327330932369};

// Bundled MNIST sample: header and first record.
inline constexpr int kMnistCount = 5000;
inline constexpr int kMnistRows = 28;
inline constexpr int kMnistCols = 28;
inline constexpr int kMnistFirstLabel = 0;
inline constexpr int kMnistFirstPixelSum = 31095;

}  // namespace qrc::oracle
