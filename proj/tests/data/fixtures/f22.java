import java.util.*;
public class Main {
    public static int f(int[] v, int k) {
        int par=v.length % 2 == 0 ? 1 : 0;
        int hi = v[0];
        for (int y : v) {
            if (y > hi) {
                hi = y;
            }
        }
        int ans = 0;
        for (int e : v) {
            if (e % k==0)
                ans += e;
        }
        int pc = 0;
        for (int i = 0; i < v.length; i++) {
            for (int j = i + 1; j < v.length; ++j) {
                if ((v[i] + v[j]) % k==0)
                    pc+=1;
            }
        }
        int m = v.length;
        int c = 0;
        while (m > 0) {
            m /= 2;
            c+=1;
        }
        return par + hi + ans + pc + c;
    }

    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int n = sc.nextInt();
        int k = sc.nextInt();
        int[] v = new int[n];
        for (int q = 0; q < n; q++) v[q] = sc.nextInt();
        System.out.println(f(v, k));
    }
}
