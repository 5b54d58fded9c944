/* wormB: reuses wormA's sender verbatim. */
int net_connect(char *host, int port);
void net_close(int sock);

int send_payload(char *host, char *data, int size) {
    int sock;
    int sent = 0;
    int chunk = 64;
    sock = net_connect(host, 8080);
    if (sock < 0) {
        return -1;
    }
    while (sent < size) {
        int n = chunk;
        if (size - sent < chunk) {
            n = size - sent;
        }
        n = send(sock, data + sent, n, 0);
        if (n <= 0) {
            break;
        }
        sent = sent + n;
    }
    net_close(sock);
    return sent;
}

int main(int argc, char **argv) {
    char data[128];
    int total = send_payload("10.0.0.1", data, 128);
    return total < 0;
}
