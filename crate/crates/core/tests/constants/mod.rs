// 300 significant digits each, computed independently with mpmath at 1100 bits.
pub const PI: &str = "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803482534211706798214808651328230664709384460955058223172535940812848111745028410270193852110555964462294895493038196442881097566593344612847564823378678316527120190914564856692346034861045432664821339360726024914127";
pub const LN2: &str = "0.693147180559945309417232121458176568075500134360255254120680009493393621969694715605863326996418687542001481020570685733685520235758130557032670751635075961930727570828371435190307038623891673471123350115364497955239120475172681574932065155524734139525882950453007095326366642654104239157814952043740";
pub const E: &str = "2.71828182845904523536028747135266249775724709369995957496696762772407663035354759457138217852516642742746639193200305992181741359662904357290033429526059563073813232862794349076323382988075319525101901157383418793070215408914993488416750924476146066808226480016847741185374234544243710753907774499207";
pub const EULER_GAMMA: &str = "0.577215664901532860606512090082402431042159335939923598805767234884867726777664670936947063291746749514631447249807082480960504014486542836224173997644923536253500333742937337737673942792595258247094916008735203948165670853233151776611528621199501507984793745085705740029921354786146694029604325421519";
pub const ZETA_3: &str = "1.20205690315959428539973816151144999076498629234049888179227155534183820578631309018645587360933525814619915779526071941849199599867328321377639683720790016145394178294936006671919157552224249424396156390966410329115909578096551465127991840510571525598801543710978110203982753256678760352233698494166";
pub const ZETA_HALF: &str = "-1.46035450880958681288949915251529801246722933101258149054288608782553052947450062527641937546335681951449637467986952958389234371035889426181923283975376292518263335864916412789122939415410119791731044810824194092788169842885717682395579918451788361465548665937991689152316352160424275374940796571353";
pub const PSI_THIRD: &str = "-3.13203378002080632299641907428726885415542829672041806419275120303517075716875506308943318961837496712469769808927714387991053660039952664270250281952737058796731619102039625750428140174684386644471541936694279585028387783334697760043648058554289158588259528675594517234946459557490060604197189917538";
pub const HURWITZ_5_2_7_3: &str = "0.257447605150205592648448682763600192812863691700335882062188223818968422482402927129753868878605428064804983933149690901936040213802566334956118500964886276665092883768852465639900815889746926770148885289260424335335350584533734035882181206716976907453779803421381933468238555964787279453652827859314";
pub const LN_FACTORIAL_100: &str = "363.739375555563490144079993369655638027823921062887274727679448876775944447979019914101000241972549319615773559722930531198015034891504259440521518363651213933980097257016866500151787333959097149972931579326618804901845544962787772206012534615175680069462456089297581300079220946653779448248429292399";
pub const SUM_SQRT_1000: &str = "21097.4558874807353553852737018523021602412932115767454483039920165743920848820307536136066630560362540060999159716503503737189208664828652685827114330658340346015839810752275321651350384192193896413402286849842956612627945623223863845387719091853526041487491541190990763516274918286500277230088510079";
pub const ZETA_HALF_14I_RE: &str = "0.0222411426099935892462131992039686263867862431949236324759364813603887466159995574596587126234918373267645049112744620737455011228170445491153824831485635207354031380113077798269520061996659388532588004998981008775014402148749604946355706231678691502565881008083686124537192470278444888423316414424444";
pub const ZETA_HALF_14I_IM: &str = "-0.103258123266450057902363095552573834507549030464100714717429025028717926534895230407915531031719302639847165276723845828129965492862871988435853017003184209633226714836564131583984281230708971490601718864461586040154475468665959076229345348908468173577285973571247534474459585318511631527434331060262";
