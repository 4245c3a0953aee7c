"""Two-sided Student-t critical values t(nu, 1 - alpha/2), nu = 1..120.

Frozen literals; beyond nu = 120 the normal quantile is used."""

T_TABLE = {
    0.9: (
        6.313751514800932, 2.919985580355516, 2.3533634348018264, 2.131846786326649,
        2.0150483733330233, 1.9431802805153022, 1.894578605061305, 1.8595480375228424,
        1.8331129326536335, 1.8124611228107335, 1.7958848187036691, 1.782287555649159,
        1.7709333959867988, 1.7613101357748562, 1.7530503556925547, 1.74588367627624,
        1.7396067260750672, 1.7340636066175354, 1.729132811521367, 1.7247182429207857,
        1.7207429028118775, 1.717144374380242, 1.7138715277470473, 1.7108820799094275,
        1.7081407612518986, 1.7056179197592727, 1.7032884457221265, 1.701130934265931,
        1.6991270265334972, 1.6972608865939574, 1.695518782545865, 1.6938887483837104,
        1.6923603090303438, 1.6909242551868549, 1.6895724577802655, 1.688297714116816,
        1.6870936195962631, 1.685954460166737, 1.6848751217112248, 1.6838510133356523,
        1.6828780021327079, 1.6819523574675337, 1.681070703202519, 1.6802299765721167,
        1.6794273926523546, 1.6786604135568652, 1.6779267216418605, 1.6772241961243388,
        1.6765508926168537, 1.6759050251630974, 1.6752849504249099, 1.6746891537260251,
        1.6741162367031004, 1.673564906352161, 1.6730339652899113, 1.6725223030755778,
        1.6720288884609527, 1.671552762454859, 1.6710930321038946, 1.6706488649046363,
        1.6702194837737372, 1.6698041625120112, 1.6694022217068125, 1.6690130250240898,
        1.6686359758475522, 1.6682705142276324, 1.6679161141074244, 1.6675722807967082,
        1.6672385486685533, 1.6669144790559562, 1.6665996583285334, 1.666293696131535,
        1.6659962237714314, 1.6657068927340233, 1.6654253734015287, 1.6651513534785958,
        1.6648845373274253, 1.6646246445715054, 1.6643714091975021, 1.6641245785296965,
        1.6638839128662524, 1.6636491839760918, 1.663420174869025, 1.6631966790019561,
        1.6629784996576567, 1.6627654493673436, 1.6625573493735006, 1.6623540291297123,
        1.662155325834565, 1.6619610839969403, 1.6617711550302645, 1.6615853968734788,
        1.661403673636714, 1.6612258552697985, 1.6610518172519086, 1.6608814403008005,
        1.6607146101002037, 1.6605512170440568, 1.6603911559963895, 1.66023432606575,
        1.6600806303931508, 1.6599299759526005, 1.6597822733633634, 1.6596374367131441,
        1.659495383391465, 1.6593560339325577, 1.6592193118671417, 1.6590851435825054,
        1.6589534581903567, 1.6588241874019427, 1.6586972654099734, 1.658572628776925,
        1.658450216329324, 1.6583299690576365, 1.6582118300214266, 1.6580957442594573,
        1.6579816587044385, 1.6578695221021444, 1.657759284934641, 1.6576508993473795,
    ),
    0.95: (
        12.706204736432095, 4.302652729696142, 3.182446305284263, 2.7764451051977987,
        2.570581835636314, 2.4469118511449692, 2.3646242515927844, 2.306004135204166,
        2.2621571628540993, 2.2281388519649385, 2.200985160082949, 2.1788128296634177,
        2.1603686564610127, 2.1447866879169273, 2.131449545559323, 2.1199052992210112,
        2.1098155778331806, 2.10092204024096, 2.093024054408263, 2.0859634472658364,
        2.079613844727662, 2.0738730679040147, 2.0686576104190406, 2.0638985616280205,
        2.059538552753294, 2.055529438642871, 2.0518305164802833, 2.048407141795244,
        2.045229642132703, 2.0422724563012373, 2.0395134463964077, 2.036933343460101,
        2.0345152974493383, 2.032244509317718, 2.0301079282503425, 2.0280940009804502,
        2.0261924630291093, 2.024394163911969, 2.0226909200367604, 2.0210753903062733,
        2.019540970441376, 2.018081702818444, 2.016692199227824, 2.0153675744437636,
        2.014103388880846, 2.0128955989194286, 2.0117405137297655, 2.010634757624232,
        2.0095752371292397, 2.008559112100761, 2.007583770315836, 2.006646805061688,
        2.0057459953178687, 2.004879288188057, 2.004044783289146, 2.003240718847872,
        2.002465459291007, 2.0017174841452356, 2.0009953780882674, 2.00029782201426,
        1.9996235849949393, 1.9989715170333786, 1.998340542520741, 1.9977296543176926,
        1.9971379083920033, 1.9965644189523113, 1.9960083540252962, 1.9954689314298435,
        1.9949454151072374, 1.994437111771186, 1.993943367845625, 1.9934635666618716,
        1.992997125889855, 1.9925434951809322, 1.9921021540022417, 1.9916726096446642,
        1.9912543953883843, 1.9908470688116904, 1.9904502102301282, 1.9900634212544457,
        1.9896863234569024, 1.9893185571365721, 1.9889597801751624, 1.9886096669757087,
        1.9882679074772216, 1.9879342062390202, 1.9876082815890703, 1.987289864831169,
        1.986978699506281, 1.9866745407037676, 1.9863771544186173, 1.98608631695113,
        1.9858018143458234, 1.985523441866604, 1.9852510035091888, 1.9849843115310182,
        1.9847231860271193, 1.984467454426692, 1.9842169515086827, 1.9839715184496334,
        1.983731002885281, 1.98349525849594, 1.98326414470971, 1.9830375264229898,
        1.9828152737371543, 1.9825972617102907, 1.9823833701230174, 1.9821734832574511,
        1.981967489688474, 1.98176528208651, 1.9815667570310707, 1.9813718148344004,
        1.98118035937458, 1.9809922979375063, 1.9808075410672, 1.9806260024239375,
        1.9804475986497292, 1.9802722492407059, 1.980099876426006, 1.9799304050527766,
    ),
    0.98: (
        31.82051595375758, 6.964556734283269, 4.540702858471383, 3.7469473879811366,
        3.3649299989072747, 3.142668403290985, 2.9979515668685277, 2.8964594477096215,
        2.821437925025808, 2.7637694581126953, 2.7180791838138614, 2.680997993130055,
        2.6503088378527013, 2.624494067560231, 2.602480294995493, 2.583487185267472,
        2.5669339837199097, 2.552379630179453, 2.539483190622288, 2.527977002740546,
        2.517648016044097, 2.508324552898667, 2.4998667394943976, 2.4921594731575762,
        2.4851071754106413, 2.478629823591159, 2.4726599119559487, 2.4671400979674316,
        2.4620213601503833, 2.4572615424005697, 2.45282419340263, 2.44867763367204,
        2.4447941998077973, 2.4411496279064764, 2.437722547143737, 2.4344940612311357,
        2.431447400464671, 2.428567630859085, 2.4258414097356287, 2.4232567793348565,
        2.420802991729078, 2.418470359634635, 2.4162501287629707, 2.4141343681687375,
        2.412115875703358, 2.410188096201379, 2.408345050443425, 2.4065812732756067,
        2.404891759537668, 2.4032719166741714, 2.4017175230846965, 2.400224691418382,
        2.3987898361414386, 2.397409644808455, 2.396081052553316, 2.394801219386567,
        2.393567509945554, 2.39237747539368, 2.3912288372073562, 2.3901194726249124,
        2.3890474015620953, 2.3880107748245534, 2.3870078634697967, 2.3860370491899454,
        2.385096815602821, 2.384185740352837, 2.383302487935197, 2.3824458031673093,
        2.3816145052403037, 2.3808074822914325, 2.380023686444878, 2.379262129274508,
        2.378521877647267, 2.377802049910469, 2.3771018123902574, 2.3764203761719984,
        2.3757569941364802, 2.375110958228517, 2.374481596936969, 2.3738682729673424,
        2.3732703810900015, 2.3726873461487403, 2.3721186212159378, 2.3715636858818603,
        2.371022044666872, 2.370493225546369, 2.369976778579222, 2.3694722746313324,
        2.368979304186714, 2.368497476239167, 2.368026417258248, 2.3675657702237847,
        2.3671151937236976, 2.366674361110337, 2.366242959710951, 2.365820690088284,
        2.3654072653476232, 2.3650024104869263, 2.364605861786943, 2.3642173662384813,
        2.363836681004212, 2.3634635729125977, 2.363097817981741, 2.362739200971102,
        2.3623875149592015, 2.362042560945574, 2.3617041474753524, 2.3613720902850037,
        2.361046211967844, 2.3607263416580384, 2.360412314731927, 2.360103972525561,
        2.359801162067439, 2.359503735825506, 2.359211551467511, 2.3589244716339386,
        2.358642363722726, 2.358365099685072, 2.358092555831669, 2.3578246126487548,
    ),
    0.99: (
        63.65674116287399, 9.92484320091807, 5.840909309733352, 4.604094871415897,
        4.032142983557536, 3.707428021324907, 3.4994832973505026, 3.3553873313333957,
        3.2498355415921254, 3.16927267261695, 3.1058065155392804, 3.0545395893929017,
        3.0122758387165773, 2.976842734370834, 2.9467128834859504, 2.920781622496036,
        2.8982305196347173, 2.878440472713585, 2.860934606449914, 2.845339709776814,
        2.831359558017186, 2.818756060596369, 2.8073356837675227, 2.796939504772804,
        2.787435813675851, 2.7787145333289134, 2.7706829571216756, 2.763262455461066,
        2.756385903670335, 2.7499956535670305, 2.7440419192941268, 2.738481482012083,
        2.733276642350758, 2.7283943670706616, 2.723805589208047, 2.719484630449974,
        2.715408721549962, 2.7115576019130625, 2.707913183517646, 2.7044592674331502,
        2.701181303578512, 2.6980661862199766, 2.695102079157669, 2.692278265693017,
        2.6895850193746385, 2.6870134922422126, 2.6845556178665215, 2.6822040269502136,
        2.67995197363155, 2.6777932709408425, 2.6757222341106464, 2.6737336306472184,
        2.6718226362410027, 2.669984795734891, 2.668215988486193, 2.6665123975560627,
        2.664870482241971, 2.663286953537658, 2.661758752162967, 2.6602830288550363,
        2.658857126653926, 2.657478564951156, 2.656145025099861, 2.6548543374110842,
        2.6536044693829246, 2.652393515028316, 2.651219685183657, 2.650081298694729,
        2.6489767743886263, 2.6479046237511508, 2.6468634442383916, 2.645851913159326,
        2.644868782073382, 2.6439128716530895, 2.642983066967393, 2.6420783131459915,
        2.6411976113892717, 2.6403400152921264, 2.63950462745322, 2.6386905963441825,
        2.637897113415776, 2.637123410420374, 2.6363687569321224, 2.6356324580479606,
        2.6349138522543054, 2.634212309445634, 2.633527229082496, 2.6328580384776448,
        2.6322041912000085, 2.631565165587158, 2.630940463357764, 2.630329608316288,
        2.6297321451428344, 2.6291476382617045, 2.628575670782743, 2.6280158435100693,
        2.627467774013252, 2.626931095756373, 2.6264054572808275, 2.6258905214380177,
        2.625385964668441, 2.624891476323912, 2.6244067580299553, 2.623931523085605,
        2.6234654958980834, 2.6230084114500203, 2.6225600147970334, 2.622120060593689,
        2.6216883126459782, 2.621264543488595, 2.6208485339854377, 2.620440072951842,
        2.6200389567971962, 2.6196449891866536, 2.6192579807207705, 2.618877748631969,
        2.6185041164968004, 2.618136913963057, 2.617775976490859, 2.617421145106866,
    ),
}

Z_TABLE = {
    0.9: 1.6448536269514722,
    0.95: 1.959963984540054,
    0.98: 2.3263478740408408,
    0.99: 2.5758293035489004,
}
