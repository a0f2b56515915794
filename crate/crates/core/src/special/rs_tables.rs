// Generated by tools/gen_rs_tables.py; do not edit by hand.
// Max fit deviation over check points: 4.08e-32

pub(crate) const RS_CHEB_DEGREE: usize = 44;

pub(crate) static RS_CHEB: [[f64; 45]; 5] = [
    [
        6.4266728623976837755e-1,
        0.0,
        2.7197299999785506708e-1,
        0.0,
        1.0738605819340284154e-2,
        0.0,
        -1.3743815296336614438e-3,
        0.0,
        -1.2468221880320677228e-4,
        0.0,
        -5.7645997067830480365e-7,
        0.0,
        2.7280674295804522256e-7,
        0.0,
        8.0779530595004706241e-9,
        0.0,
        -2.0884608068869654474e-10,
        0.0,
        -1.3115561854739527051e-11,
        0.0,
        -1.4207987228087185165e-14,
        0.0,
        1.0271701357931161578e-14,
        0.0,
        1.3974598819518374434e-16,
        0.0,
        -4.4841187339522883256e-18,
        0.0,
        -1.1830599573845289e-19,
        0.0,
        9.3898695603999355835e-22,
        0.0,
        5.6018228473206968876e-23,
        0.0,
        1.0023543875614807174e-25,
        0.0,
        -1.7592985581293886555e-26,
        0.0,
        -1.4854553062733662841e-28,
        0.0,
        3.8087608010848310343e-30,
        0.0,
        5.9011831395297341197e-32,
        0.0,
        -5.3644065889517071191e-34,
    ],
    [
        0.0,
        1.0697913921003000771e-2,
        0.0,
        1.7170651243377883821e-2,
        0.0,
        2.7932111497884710902e-3,
        0.0,
        -3.6375653719275042398e-5,
        0.0,
        -2.7108955231150887012e-5,
        0.0,
        -1.0483749866752773376e-6,
        0.0,
        5.8864671665275718452e-8,
        0.0,
        4.322967268502779053e-9,
        0.0,
        -1.1369591588273711745e-11,
        0.0,
        -6.6998339103553274809e-12,
        0.0,
        -1.0079997652808474909e-13,
        0.0,
        5.1524880092221162994e-15,
        0.0,
        1.5216954471836970996e-16,
        0.0,
        -1.8619464833687101047e-18,
        0.0,
        -1.1301846184246265271e-19,
        0.0,
        -9.6503064768571034705e-23,
        0.0,
        5.2266106854276171993e-23,
        0.0,
        4.6300490546114011766e-25,
        0.0,
        -1.6018105598830104799e-26,
        0.0,
        -2.6582049781870995611e-28,
        0.0,
        3.1439928013542951197e-30,
        0.0,
        9.204745058485248836e-32,
        0.0,
    ],
    [
        3.1461158539889122601e-3,
        0.0,
        -2.3087838845307501229e-3,
        0.0,
        5.7698207666898440219e-5,
        0.0,
        3.5238862023665900663e-4,
        0.0,
        2.5246667458684434452e-5,
        0.0,
        -3.4428211971931358825e-6,
        0.0,
        -3.535074556622458876e-7,
        0.0,
        3.7308301837926253928e-9,
        0.0,
        1.2776951864116635296e-9,
        0.0,
        2.1874616204147057788e-11,
        0.0,
        -1.9141410964610370397e-12,
        0.0,
        -6.5628831021685226882e-14,
        0.0,
        1.2586009182411715633e-15,
        0.0,
        8.1400766238814626651e-17,
        0.0,
        -5.4238742754886074453e-20,
        0.0,
        -5.796980131086543073e-20,
        0.0,
        -5.3829165037463970229e-22,
        0.0,
        2.6010080772383425905e-23,
        0.0,
        4.6669667749113274601e-25,
        0.0,
        -7.2888495360751778816e-27,
        0.0,
        -2.2500967907231931001e-28,
        0.0,
        9.7378549586120287407e-31,
        0.0,
        7.4146812561434643999e-32,
    ],
    [
        0.0,
        7.1232562212038731881e-5,
        0.0,
        2.3234305298164808478e-4,
        0.0,
        -1.2929912045472474797e-4,
        0.0,
        1.8074496413671439331e-5,
        0.0,
        6.5261851872204395021e-6,
        0.0,
        -1.1696365378521986284e-7,
        0.0,
        -7.3494761265181258581e-8,
        0.0,
        -1.7750910077907071452e-9,
        0.0,
        2.5555529613265251393e-10,
        0.0,
        1.1376636600537299275e-11,
        0.0,
        -3.3498638985302768867e-13,
        0.0,
        -2.5537379354163891764e-14,
        0.0,
        6.7665007713218707769e-17,
        0.0,
        2.9768884719919728211e-17,
        0.0,
        2.9952208087566913899e-19,
        0.0,
        -2.0461188497575092353e-20,
        0.0,
        -4.086926453328992325e-22,
        0.0,
        8.4476121091139216552e-24,
        0.0,
        2.8302694448256255292e-25,
        0.0,
        -1.7162555945454355802e-27,
        0.0,
        -1.2805512378156142894e-28,
        0.0,
        -2.1396329633637816131e-31,
        0.0,
    ],
    [
        1.6765745246696859631e-4,
        0.0,
        -2.2728768943416725824e-4,
        0.0,
        6.4773871884456960396e-5,
        0.0,
        -8.4922005001254090539e-6,
        0.0,
        -2.6161407245219076555e-6,
        0.0,
        8.3367649687332145227e-7,
        0.0,
        6.3247040375448326217e-8,
        0.0,
        -1.0059949403001071552e-8,
        0.0,
        -7.8226772041303330543e-10,
        0.0,
        3.1676582853498603453e-11,
        0.0,
        3.5006944702052894993e-12,
        0.0,
        -1.4314814511443749529e-14,
        0.0,
        -7.2694027079217634786e-15,
        0.0,
        -8.7805565948359567716e-17,
        0.0,
        8.1502544749545795601e-18,
        0.0,
        1.9208397058220861423e-19,
        0.0,
        -5.1756552139529816509e-21,
        0.0,
        -1.9767736724405780288e-22,
        0.0,
        1.6059867343952903226e-24,
        0.0,
        1.2658632662439861862e-25,
        0.0,
        1.6326189825047857415e-28,
        0.0,
        -5.5372110217423459821e-29,
        0.0,
        -4.3104843972026350486e-31,
    ],
];
