class Lexer {
    int kind;

    void keyword(String token, String s) {
        char c;
        switch(token.length()) {case 1: c=s.charAt(1); if (c=='f') { kind = 1; } break; default: break;}
    }
}
